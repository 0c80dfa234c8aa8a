"""Partition calculus tests.

Small-rank orbit tables (Sp4, SO5, SO7) are asserted by hand first; the step
relation is then pinned by worked examples and closed under exhaustive
roundtrips up to moderate sizes.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilorb.errors import InputError, IntegrityError, StepInapplicableError
from nilorb.orbit_partitions import (
    BirationalSource,
    ClassicalOrbit,
    StepScript,
    birational_sources,
    elementary_step,
    has_codim4_boundary,
    inverse_steps,
    is_birationally_rigid,
    is_special,
    is_valid_type,
    partitions_of,
    rigid_special_source,
    transpose,
)


def orbit(kind, *parts):
    return ClassicalOrbit(kind, tuple(parts))


def valid_orbits(kind, total):
    return [
        ClassicalOrbit(kind, p) for p in partitions_of(total) if is_valid_type(p, kind)
    ]


# --- validity and transpose -----------------------------------------------------

def test_validity_small_cases():
    assert is_valid_type((4,), "C")
    assert is_valid_type((2, 2), "C")
    assert not is_valid_type((3, 1), "C")
    assert is_valid_type((3, 1), "A")
    assert is_valid_type((5,), "B")
    assert not is_valid_type((4, 1), "B")
    assert is_valid_type((2, 2, 1), "B")
    assert is_valid_type((3, 3), "D")
    assert not is_valid_type((4, 2), "D")
    assert is_valid_type((), "C") and is_valid_type((), "D")
    assert not is_valid_type((), "B")  # zero is even


def test_validity_rejects_malformed_input():
    with pytest.raises(InputError):
        is_valid_type((1, 2), "C")
    with pytest.raises(InputError):
        is_valid_type((0,), "C")
    with pytest.raises(InputError):
        is_valid_type((2, 2), "E")


def test_transpose_cases_and_involution():
    assert transpose((3, 2, 2)) == (3, 3, 1)
    assert transpose((5, 3, 1)) == (3, 2, 2, 1, 1)
    assert transpose(()) == ()
    for total in range(0, 13):
        for p in partitions_of(total):
            assert sum(transpose(p)) == total
            assert transpose(transpose(p)) == p


def test_orbit_validation():
    with pytest.raises(InputError):
        ClassicalOrbit("C", (3, 1))
    with pytest.raises(InputError):
        ClassicalOrbit("A", (2, 1))
    assert orbit("D", 3, 3).size == 6
    assert orbit("D", 2, 2).is_very_even
    assert not orbit("D", 3, 3).is_very_even
    assert not orbit("C", 2, 2).is_very_even


# --- specialness -----------------------------------------------------------------

def test_sp4_special_orbits():
    by_parts = {o.parts: is_special(o) for o in valid_orbits("C", 4)}
    assert by_parts == {
        (4,): True,
        (2, 2): True,
        (2, 1, 1): False,
        (1, 1, 1, 1): True,
    }


def test_so5_special_orbits():
    by_parts = {o.parts: is_special(o) for o in valid_orbits("B", 5)}
    assert by_parts == {
        (5,): True,
        (3, 1, 1): True,
        (2, 2, 1): False,
        (1, 1, 1, 1, 1): True,
    }


def test_so7_minimal_orbit_is_not_special():
    assert not is_special(orbit("B", 2, 2, 1, 1, 1))
    assert is_special(orbit("B", 3, 2, 2))
    assert is_special(orbit("B", 7))


# --- elementary steps --------------------------------------------------------------

def test_variant_i_with_padding():
    grown, variant = elementary_step(orbit("C"), 1)
    assert (grown.parts, variant) == ((2,), "i")
    grown, variant = elementary_step(orbit("C", 2), 2)
    assert (grown.parts, variant) == ((4, 2), "i")


def test_variant_ii_fires_only_when_variant_i_fails():
    grown, variant = elementary_step(orbit("C", 1, 1), 1)
    assert (grown.parts, variant) == ((2, 2), "ii")
    grown, variant = elementary_step(orbit("B", 2, 2, 1), 1)
    assert (grown.parts, variant) == ((3, 3, 1), "ii")
    grown, variant = elementary_step(orbit("B", 1), 2)
    assert (grown.parts, variant) == ((3, 1, 1), "ii")


def test_forced_variant_legality():
    with pytest.raises(StepInapplicableError):
        elementary_step(orbit("C", 2), 1, variant="ii")  # variant i applies
    with pytest.raises(StepInapplicableError):
        elementary_step(orbit("C", 1, 1), 1, variant="i")  # lands outside type C
    grown, variant = elementary_step(orbit("C", 1, 1), 1, variant="ii")
    assert (grown.parts, variant) == ((2, 2), "ii")


def test_step_argument_validation():
    with pytest.raises(InputError):
        elementary_step(orbit("C", 2), 0)
    with pytest.raises(InputError):
        elementary_step(orbit("C", 2), 1, variant="x")


def test_step_grows_size_by_2n():
    for kind, parts in (("C", (2, 2)), ("B", (3, 1, 1)), ("D", (3, 3))):
        o = ClassicalOrbit(kind, parts)
        for n in range(1, 5):
            try:
                grown, _ = elementary_step(o, n)
            except StepInapplicableError:
                continue
            assert grown.size == o.size + 2 * n


# --- inverse steps -----------------------------------------------------------------

def test_inverse_steps_of_c_44():
    inv = inverse_steps(orbit("C", 4, 4))
    assert {(s.source.parts, s.n, s.variant) for s in inv} == {
        ((3, 3), 1, "ii"),
        ((2, 2), 2, "i"),
    }


def test_inverse_steps_of_b_311():
    inv = inverse_steps(orbit("B", 3, 1, 1))
    assert {(s.source.parts, s.n, s.variant) for s in inv} == {
        ((1, 1, 1), 1, "i"),
        ((1,), 2, "ii"),
    }


def test_inverse_steps_roundtrip_exhaustive():
    for kind in ("B", "C", "D"):
        totals = range(1 if kind == "B" else 2, 11, 2)
        for total in totals:
            for o in valid_orbits(kind, total):
                for step in inverse_steps(o):
                    grown, variant = elementary_step(step.source, step.n)
                    assert grown == o
                    assert variant == step.variant


def test_forward_steps_are_recovered_by_inverse_exhaustive():
    for kind in ("B", "C", "D"):
        totals = range(1 if kind == "B" else 2, 9, 2)
        for total in totals:
            for o in valid_orbits(kind, total):
                for n in range(1, len(o.parts) + 3):
                    try:
                        grown, variant = elementary_step(o, n)
                    except StepInapplicableError:
                        continue
                    entries = {
                        (s.source.parts, s.n, s.variant)
                        for s in inverse_steps(grown)
                    }
                    assert (o.parts, n, variant) in entries


# --- rigidity and boundary ------------------------------------------------------------

def test_rigidity_cases():
    assert is_birationally_rigid(orbit("C"))
    assert is_birationally_rigid(orbit("C", 1, 1))
    assert not is_birationally_rigid(orbit("C", 2, 2))
    assert is_birationally_rigid(orbit("C", 2, 1, 1))
    assert not is_birationally_rigid(orbit("B", 3, 2, 2))
    assert is_birationally_rigid(orbit("B", 2, 2, 1, 1, 1))


def test_boundary_predicate_agrees_on_partitions():
    for kind in ("B", "C", "D"):
        for total in range(1 if kind == "B" else 2, 11, 2):
            for o in valid_orbits(kind, total):
                assert has_codim4_boundary(o) == is_birationally_rigid(o)


# --- birational sources -----------------------------------------------------------------

def test_sources_of_c_44():
    sources = birational_sources(orbit("C", 4, 4))
    assert [s.orbit.parts for s in sources] == [()]
    assert sources[0].script.steps == ((2, "i"), (2, "i"))
    assert sources[0].script.replay(sources[0].orbit) == orbit("C", 4, 4)


def test_sources_of_b_311():
    sources = birational_sources(orbit("B", 3, 1, 1))
    assert [s.orbit.parts for s in sources] == [(1, 1, 1)]
    assert sources[0].script.replay(orbit("B", 1, 1, 1)) == orbit("B", 3, 1, 1)


def test_rigid_orbit_is_its_own_source():
    sources = birational_sources(orbit("B", 2, 2, 1))
    assert [s.orbit.parts for s in sources] == [(2, 2, 1)]
    assert sources[0].script.steps == ()


def test_sources_are_rigid_sorted_and_replayable():
    for kind in ("B", "C", "D"):
        for total in range(1 if kind == "B" else 2, 13, 2):
            for o in valid_orbits(kind, total):
                sources = birational_sources(o)
                parts_list = [s.orbit.parts for s in sources]
                assert parts_list == sorted(parts_list)
                for s in sources:
                    assert is_birationally_rigid(s.orbit)
                    assert s.script.replay(s.orbit) == o


# --- rigid special source ------------------------------------------------------------------

def test_rigid_special_source_of_b_531():
    result = rigid_special_source(orbit("B", 5, 3, 1))
    assert result.orbit.parts == (1, 1, 1)
    assert result.script.steps == ((2, "i"), (1, "i"))
    assert result.script.replay(result.orbit) == orbit("B", 5, 3, 1)


def test_rigid_special_source_rejects_non_special():
    with pytest.raises(InputError):
        rigid_special_source(orbit("C", 2, 1, 1))


def test_rigid_special_source_exists_for_all_small_special_orbits():
    for kind in ("B", "C", "D"):
        for total in range(1 if kind == "B" else 2, 13, 2):
            for o in valid_orbits(kind, total):
                if not is_special(o):
                    continue
                result = rigid_special_source(o)
                assert is_special(result.orbit)
                assert is_birationally_rigid(result.orbit)
                assert result.script.replay(result.orbit) == o


# --- partitions_of ---------------------------------------------------------------------------

def test_partition_counts():
    assert sum(1 for _ in partitions_of(6)) == 11
    assert sum(1 for _ in partitions_of(10)) == 42
    assert list(partitions_of(0)) == [()]
    with pytest.raises(InputError):
        list(partitions_of(-1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 14))
def test_partitions_are_valid_and_distinct(total):
    seen = set()
    for p in partitions_of(total):
        assert sum(p) == total
        assert all(p[i] >= p[i + 1] for i in range(len(p) - 1))
        assert p not in seen
        seen.add(p)
