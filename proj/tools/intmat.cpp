#include "intmat/cli.hpp"

int main(int argc, char** argv) { return intmat::cli::run(argc, argv); }
