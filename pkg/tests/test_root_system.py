"""Root system construction tests.

The simple roots and their labels are asserted against values worked out by
hand from the defining coordinate families; nothing here trusts the
derivation code it is checking.
"""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilorb.errors import CapabilityError, InputError
from nilorb.exact_linalg import lattice_contains
from nilorb.root_system import (
    QuotientVector,
    build_root_system,
    cartan_matrix,
    coroot,
    coroot_lattice,
    lattice_contains_mod_ones,
    levi_subsystem,
    pair,
)


def qv(*coords):
    return QuotientVector(tuple(coords))


def eps_diff(dim, i, j):
    c = [0] * dim
    c[i - 1], c[j - 1] = 1, -1
    return QuotientVector(tuple(c))


# --- quotient vectors ----------------------------------------------------------

def test_ones_is_zero_in_quotient():
    assert qv(1, 1, 1, 1, 1, 1, 1, 1).is_zero()
    assert not qv(1, 1, 1, 1, 1, 1, 1, 0).is_zero()


def test_equality_mod_ones():
    a = qv(2, 0, 0, 0, 0, 0, 0, 0)
    b = qv(1, -1, -1, -1, -1, -1, -1, -1)
    assert a == b
    assert hash(a) == hash(b)
    assert a.canonical_coords == (2, 0, 0, 0, 0, 0, 0, 0)


def test_fractional_shift_is_still_equal():
    a = qv(Fraction(1, 2), 0, 0)
    b = a + QuotientVector((Fraction(1, 3),) * 3)
    assert a == b


def test_arithmetic_and_dim_checks():
    a = qv(1, 0, -1)
    assert (a + a) == qv(2, 0, -2)
    assert (a - a).is_zero()
    assert (-a) == qv(-1, 0, 1)
    assert (2 * a) == qv(2, 0, -2)
    with pytest.raises(InputError):
        a + qv(1, 0)
    with pytest.raises(InputError):
        QuotientVector((1.5, 0))


# --- the pairing ----------------------------------------------------------------

def test_pair_small_cases():
    a = eps_diff(8, 1, 2)
    b = eps_diff(8, 2, 3)
    assert pair(a, a) == 2
    assert pair(a, b) == -1
    assert pair(a, eps_diff(8, 3, 4)) == 0


def test_pair_returns_fraction_when_non_integral():
    x = qv(1, 0, 0, 0, 0, 0, 0, 0)
    assert pair(x, x) == Fraction(7, 8)


@settings(max_examples=120, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=8, max_size=8),
    st.lists(st.integers(-5, 5), min_size=8, max_size=8),
    st.integers(-4, 4),
)
def test_pair_descends_to_quotient(xs, ys, t):
    x = QuotientVector(tuple(xs))
    y = QuotientVector(tuple(ys))
    shifted = QuotientVector(tuple(c + t for c in xs))
    assert pair(shifted, y) == pair(x, y)
    assert pair(x, y) == pair(y, x)


# --- construction ----------------------------------------------------------------

def test_unknown_system_rejected():
    for bad in ("E6", "F4", "G2", "A1", "e7", ""):
        with pytest.raises(CapabilityError):
            build_root_system(bad)


def test_positive_root_counts():
    assert len(build_root_system("E7").positive_roots) == 63
    assert len(build_root_system("E8").positive_roots) == 120


def test_all_roots_have_norm_two_and_selfdual_coroot():
    for name in ("E7", "E8"):
        rs = build_root_system(name)
        for r in rs.positive_roots:
            assert pair(r, r) == 2
            assert coroot(r) == r


def test_coroot_rejects_wrong_norm():
    with pytest.raises(InputError):
        coroot(qv(1, 0, 0, 0, 0, 0, 0, 0))


def test_build_is_cached():
    assert build_root_system("E7") is build_root_system("E7")


def test_e7_simple_roots_and_labels():
    rs = build_root_system("E7")
    expected = [eps_diff(8, i, i + 1) for i in range(1, 7)]
    expected.append(qv(0, 0, 0, 0, 1, 1, 1, 1))
    assert list(rs.simple_roots) == expected


def test_e8_simple_roots_and_labels():
    rs = build_root_system("E8")
    expected = [eps_diff(9, i, i + 1) for i in range(1, 8)]
    expected.append(qv(0, 0, 0, 0, 0, 1, 1, 1, 0))
    assert list(rs.simple_roots) == expected


def test_e8_sum_detection_works_in_quotient():
    # raw coordinates suggest this root is simple; in the quotient it is the
    # sum of two triples, so it must not be derived as simple
    rs = build_root_system("E8")
    r = qv(-1, -1, 0, 0, 0, 0, 0, 0, -1)
    assert rs.is_positive_root(r)
    assert r == qv(0, 0, 1, 1, 1, 1, 1, 1, 0)
    assert r not in rs.simple_roots
    s = qv(0, 0, 1, 1, 1, 0, 0, 0, 0) + qv(0, 0, 0, 0, 0, 1, 1, 1, 0)
    assert s == r


def test_cartan_matrices_have_e_series_shape():
    for name, branch, arms in (("E7", 4, (3, 2, 1)), ("E8", 5, (4, 2, 1))):
        rs = build_root_system(name)
        cm = cartan_matrix(rs)
        n = rs.rank
        for i in range(n):
            assert cm[i][i] == 2
            for j in range(n):
                if i != j:
                    assert cm[i][j] in (0, -1)
                    assert cm[i][j] == cm[j][i]
        degrees = [sum(1 for j in range(n) if j != i and cm[i][j] == -1) for i in range(n)]
        assert degrees.count(3) == 1
        assert degrees[branch - 1] == 3
        # walking away from the branch vertex yields the advertised arm lengths
        neighbors = {
            i: [j for j in range(n) if j != i and cm[i][j] == -1] for i in range(n)
        }
        lengths = []
        for start in neighbors[branch - 1]:
            length, prev, cur = 1, branch - 1, start
            while True:
                nxt = [v for v in neighbors[cur] if v != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            lengths.append(length)
        assert sorted(lengths, reverse=True) == list(arms)


def test_coefficients_recombine_every_positive_root():
    for name in ("E7", "E8"):
        rs = build_root_system(name)
        for root in rs.positive_roots:
            coeffs = rs.coefficients(root)
            assert all(c >= 0 for c in coeffs) and any(c > 0 for c in coeffs)
            acc = QuotientVector((0,) * rs.ambient_dim)
            for c, alpha in zip(coeffs, rs.simple_roots):
                acc = acc + c * alpha
            assert acc == root


def test_simple_roots_have_unit_coefficient_vectors():
    rs = build_root_system("E8")
    for k, alpha in enumerate(rs.simple_roots):
        coeffs = rs.coefficients(alpha)
        assert coeffs == tuple(1 if i == k else 0 for i in range(rs.rank))


def test_coefficients_rejects_non_root():
    rs = build_root_system("E7")
    with pytest.raises(InputError):
        rs.coefficients(qv(1, 1, 0, 0, 0, 0, 0, 0))


# --- levi subsystems --------------------------------------------------------------

def test_levi_e7_a2_plus_a1():
    rs = build_root_system("E7")
    levi = levi_subsystem(rs, (1, 2, 6))
    assert levi.rank == 3
    expected = {
        eps_diff(8, 1, 2),
        eps_diff(8, 2, 3),
        eps_diff(8, 1, 3),
        eps_diff(8, 6, 7),
    }
    assert set(levi.positive_roots) == expected


def test_levi_e8_a4_plus_2a1():
    rs = build_root_system("E8")
    levi = levi_subsystem(rs, (1, 2, 3, 4, 7, 8))
    assert levi.rank == 6
    assert len(levi.positive_roots) == 12
    a4_part = {eps_diff(9, i, j) for i, j in itertools.combinations(range(1, 6), 2)}
    assert a4_part <= set(levi.positive_roots)
    assert eps_diff(9, 7, 8) in levi.positive_roots
    assert qv(0, 0, 0, 0, 0, 1, 1, 1, 0) in levi.positive_roots


def test_levi_validation():
    rs = build_root_system("E7")
    with pytest.raises(InputError):
        levi_subsystem(rs, (0,))
    with pytest.raises(InputError):
        levi_subsystem(rs, (8,))
    with pytest.raises(InputError):
        levi_subsystem(rs, (1, 1))
    assert levi_subsystem(rs, ()).positive_roots == ()


def test_full_levi_recovers_all_positives():
    rs = build_root_system("E7")
    levi = levi_subsystem(rs, tuple(range(1, 8)))
    assert set(levi.positive_roots) == set(rs.positive_roots)


# --- coroot lattices ---------------------------------------------------------------

def test_e7_coroot_lattice_is_sum_divisible_by_four():
    basis = coroot_lattice("E7")
    rng = random.Random(11)
    for _ in range(200):
        v = tuple(rng.randint(-5, 5) for _ in range(8))
        member = lattice_contains(basis, v) is not None
        assert member == (sum(v) % 4 == 0), v


def test_e8_coroot_lattice_is_sum_divisible_by_three():
    basis = coroot_lattice("E8")
    rng = random.Random(12)
    for _ in range(200):
        v = tuple(rng.randint(-5, 5) for _ in range(9))
        member = lattice_contains(basis, v) is not None
        assert member == (sum(v) % 3 == 0), v


def test_ones_lies_in_both_coroot_lattices():
    assert lattice_contains(coroot_lattice("E7"), (1,) * 8) is not None
    assert lattice_contains(coroot_lattice("E8"), (1,) * 9) is not None


def test_membership_mod_ones():
    basis = coroot_lattice("E7")
    assert lattice_contains_mod_ones(basis, qv(5, 4, 1, 4, 4, 3, -1, 8))
    assert not lattice_contains_mod_ones(basis, qv(1, 0, 0, 0, 0, 0, 0, 0))
    with pytest.raises(InputError):
        lattice_contains_mod_ones(basis, qv(Fraction(1, 2), 0, 0, 0, 0, 0, 0, 0))
