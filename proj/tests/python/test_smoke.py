from fractions import Fraction

import pytest

import intmat


def test_det_and_rank_on_big_entries():
    big = 10**30
    assert intmat.det([[big, 1], [1, big]]) == big * big - 1
    assert intmat.rank([[1, 2], [2, 4]]) == 1
    assert intmat.is_singular([[1, 2], [2, 4]])


def test_kernel_is_annihilated():
    rows = [[1, 2, 3], [4, 5, 6]]
    (v,) = intmat.kernel_basis(rows)
    assert v == [1, -2, 1]
    assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_exact_fraction_against_enumeration():
    assert intmat.exact_singular_fraction(2, 1) == Fraction(11, 27)
    assert intmat.exact_singular_fraction(1, 1) == Fraction(1, 3)
    with pytest.raises(intmat.BudgetExceeded):
        intmat.exact_singular_fraction(4, 4)


def test_monte_carlo_brackets_exact_value():
    r = intmat.mc_singularity(2, 1, 50_000, seed=7, threads=2, level=0.999)
    assert r["ci_low"] <= 11 / 27 <= r["ci_high"]
    again = intmat.mc_singularity(2, 1, 50_000, seed=7, threads=1, level=0.999)
    assert again["hits"] == r["hits"]


def test_mds_verify_and_generate():
    v = intmat.is_mds([[1, 2, 1], [3, 4, 3]])
    assert not v["is_mds"] and v["witness"] == [0, 2]
    g = intmat.generate_mds(3, 6, 16, seed=5)
    assert intmat.is_mds(g["matrix"])["is_mds"]
    with pytest.raises(intmat.GenerationFailure):
        intmat.generate_mds(2, 20, 1, max_attempts=5, seed=1)
    assert intmat.pigeonhole_min_alphabet(2, 9) == 3


def test_charfunc_values():
    assert intmat.F(0.0, 3) == 1.0
    assert intmat.F(0.5, 1) == pytest.approx(1 / 3)
    assert intmat.F(0.5, 2) <= intmat.G(1.0)
    assert intmat.epsilon_zero(16) == pytest.approx(0.125)
    assert intmat.charfn_modulus([1.0], 0.0, 2) == 1.0
    r = intmat.small_ball_probe([0.6, 0.8], 2, 0.3, 20_000, seed=3)
    assert 0.0 <= r["estimate"] <= 1.0 and r["esseen_integral"] > 0.0


def test_vector_geometry():
    assert intmat.is_compressible([1.0, 0.0, 0.0, 0.0], 0.25, 0.5)
    assert not intmat.is_compressible([1.0, 1.0, 1.0, 1.0], 0.25, 0.5)
    assert intmat.lcd_upper([1.0, 1.0, 1.0, 1.0], 0.25, 0.1, 4.0, 0.5) <= 2.0
    x = intmat.normal_vector([[1, 0, 0], [0, 1, 0]])
    assert x == pytest.approx([0.0, 0.0, 1.0])


def test_domain_errors_surface():
    with pytest.raises(intmat.DomainError):
        intmat.F(0.1, 0)
    with pytest.raises(intmat.IntmatError):
        intmat.det([[1, 2], [3]])
