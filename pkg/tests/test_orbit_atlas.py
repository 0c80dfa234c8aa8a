"""Atlas loading, querying and consistency-check tests.

The fault-injection sweep at the bottom is the load-bearing guarantee: every
primary-source flag on every record, when silently negated, must trip at
least one consistency check.
"""

import json

import pytest

from nilorb.errors import AtlasLoadError, InputError, OrbitNotFoundError
from nilorb.orbit_atlas import (
    CODIM4_BOUNDARY_MEMBERS,
    E1_MEMBERS,
    E2_MEMBERS,
    E3_MEMBERS,
    SMOOTH_LOCUS_FAILURES,
    check_consistency,
    default_atlas_text,
    flip_field,
    load_atlas,
    paper_provenanced_fields,
    query,
)

CHECK_IDS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7")


@pytest.fixture(scope="module")
def atlas():
    return load_atlas()


def write_atlas(tmp_path, doc):
    target = tmp_path / "atlas.json"
    target.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
    return target


def raw_doc():
    return json.loads(default_atlas_text())


# --- loading ---------------------------------------------------------------------

def test_default_atlas_shape(atlas):
    assert len(atlas) == 63
    by_group = {}
    for r in atlas:
        by_group[r.group] = by_group.get(r.group, 0) + 1
    assert by_group == {"G2": 2, "F4": 6, "E6": 9, "E7": 14, "E8": 32}


def test_explicit_path_load_matches_default(tmp_path, atlas):
    target = write_atlas(tmp_path, raw_doc())
    assert load_atlas(target) == atlas


def test_missing_file_raises():
    with pytest.raises(AtlasLoadError):
        load_atlas("/nonexistent/atlas.json")


def test_malformed_json_raises(tmp_path):
    target = tmp_path / "atlas.json"
    target.write_text("{not json", encoding="utf-8")
    with pytest.raises(AtlasLoadError):
        load_atlas(target)


def test_wrong_top_level_raises(tmp_path):
    with pytest.raises(AtlasLoadError):
        load_atlas(write_atlas(tmp_path, [{"group": "G2"}]))
    with pytest.raises(AtlasLoadError):
        load_atlas(write_atlas(tmp_path, {"records": [], "extra": 1}))


def test_unknown_field_rejected(tmp_path):
    doc = raw_doc()
    doc["records"][0]["surprise"] = True
    with pytest.raises(AtlasLoadError) as exc:
        load_atlas(write_atlas(tmp_path, doc))
    assert "surprise" in str(exc.value)
    assert exc.value.record is not None


def test_missing_field_rejected(tmp_path):
    doc = raw_doc()
    del doc["records"][0]["in_e1"]
    with pytest.raises(AtlasLoadError):
        load_atlas(write_atlas(tmp_path, doc))


def test_duplicate_orbit_rejected(tmp_path):
    doc = raw_doc()
    doc["records"].append(dict(doc["records"][0]))
    with pytest.raises(AtlasLoadError) as exc:
        load_atlas(write_atlas(tmp_path, doc))
    assert "duplicate" in str(exc.value)


def test_bad_provenance_prefix_rejected(tmp_path):
    doc = raw_doc()
    doc["records"][0]["provenance"]["in_e1"] = "hearsay"
    with pytest.raises(AtlasLoadError):
        load_atlas(write_atlas(tmp_path, doc))


def test_provenance_must_track_non_null_flags(tmp_path):
    doc = raw_doc()
    # provenance entry for a null flag
    rec = next(r for r in doc["records"] if r["is_special"] is None)
    rec["provenance"]["is_special"] = "paper §2.3 proof"
    with pytest.raises(AtlasLoadError):
        load_atlas(write_atlas(tmp_path, doc))
    doc = raw_doc()
    # non-null flag without provenance
    del doc["records"][0]["provenance"]["codim4_boundary"]
    with pytest.raises(AtlasLoadError):
        load_atlas(write_atlas(tmp_path, doc))


def test_rigid_without_birigid_rejected(tmp_path):
    doc = raw_doc()
    rec = next(r for r in doc["records"] if r["is_rigid"] is True)
    rec["is_birationally_rigid"] = None
    del rec["provenance"]["is_birationally_rigid"]
    with pytest.raises(AtlasLoadError) as exc:
        load_atlas(write_atlas(tmp_path, doc))
    assert "is_rigid" in str(exc.value)


def test_levi_descriptor_validation(tmp_path):
    doc = raw_doc()
    rec = next(r for r in doc["records"] if r["group"] == "G2")
    rec["levi_descriptor"] = [1]
    with pytest.raises(AtlasLoadError):
        load_atlas(write_atlas(tmp_path, doc))
    doc = raw_doc()
    rec = next(r for r in doc["records"] if r["levi_descriptor"] is not None)
    rec["levi_descriptor"] = [0, 2]
    with pytest.raises(AtlasLoadError):
        load_atlas(write_atlas(tmp_path, doc))


def test_tampered_flag_rejected_at_load(tmp_path):
    doc = raw_doc()
    rec = next(r for r in doc["records"] if r["group"] == "G2" and r["label"] == "Ã_1")
    rec["in_e1"] = False
    with pytest.raises(AtlasLoadError) as exc:
        load_atlas(write_atlas(tmp_path, doc))
    assert "contradicts" in str(exc.value)


# --- record content ----------------------------------------------------------------

def test_e_lists_match_embedded_sets(atlas):
    assert {r.key for r in atlas if r.in_e1} == E1_MEMBERS
    assert {r.key for r in atlas if r.in_e2} == E2_MEMBERS
    assert {r.key for r in atlas if r.in_e3} == E3_MEMBERS


def test_embedded_list_sizes(atlas):
    assert len(E1_MEMBERS) == 6
    assert len(SMOOTH_LOCUS_FAILURES) == 13
    assert len(CODIM4_BOUNDARY_MEMBERS) == 36
    assert {r.key for r in atlas if r.fails_smooth_locus_codim4} == SMOOTH_LOCUS_FAILURES
    assert {r.key for r in atlas if r.codim4_boundary} == CODIM4_BOUNDARY_MEMBERS


def test_e2_e3_members_are_special(atlas):
    for r in atlas:
        if r.in_e2 or r.in_e3:
            assert r.is_special is True, r


def test_levi_descriptors_present(atlas):
    with_levi = {r.key: r.levi_descriptor for r in atlas if r.levi_descriptor}
    assert with_levi == {
        ("E7", "A_2+A_1"): (1, 2, 6),
        ("E8", "A_4+2A_1"): (1, 2, 3, 4, 7, 8),
    }


def test_dedup_comment_is_recorded(atlas):
    record = query(atlas, "E8", "D_4(a_1)+A_1")
    assert record.comment and "twice" in record.comment


def test_provenance_access(atlas):
    record = query(atlas, "E8", "A_4+2A_1")
    assert record.provenance_for("in_e3") == "paper §1.2"
    assert record.provenance_for("is_special") == "paper §2.3 proof"
    assert record.provenance_for("nonexistent") is None
    assert "is_rigid" in paper_provenanced_fields(record)


# --- query ------------------------------------------------------------------------

def test_query_hit(atlas):
    record = query(atlas, "E7", "A_2+A_1")
    assert record.is_special is True
    assert record.is_rigid is False
    assert record.is_birationally_rigid is True


def test_query_miss_suggests(atlas):
    with pytest.raises(OrbitNotFoundError) as exc:
        query(atlas, "E8", "A4+2A1")
    assert "A_4+2A_1" in exc.value.suggestions


def test_query_miss_points_at_other_groups(atlas):
    with pytest.raises(OrbitNotFoundError) as exc:
        query(atlas, "G2", "E_7(a_4)")
    assert "E8:E_7(a_4)" in exc.value.suggestions


def test_query_unknown_group(atlas):
    with pytest.raises(InputError):
        query(atlas, "E9", "A_1")


# --- checks -----------------------------------------------------------------------

def test_all_checks_pass_on_default_atlas(atlas):
    results = check_consistency(atlas)
    assert tuple(r.check_id for r in results) == CHECK_IDS
    assert all(r.passed for r in results), [
        (r.check_id, r.details) for r in results if not r.passed
    ]


def test_checks_are_order_independent(atlas):
    forward = check_consistency(atlas)
    backward = check_consistency(tuple(reversed(atlas)))
    assert [(r.check_id, r.passed) for r in forward] == [
        (r.check_id, r.passed) for r in backward
    ]


def test_c6_uses_injected_runner(atlas):
    calls = []

    def liar(group, indices):
        calls.append((group, indices))
        return "non-integral"

    results = {r.check_id: r for r in check_consistency(atlas, delta_runner=liar)}
    assert ("E7", (1, 2, 6)) in calls
    assert ("E8", (1, 2, 3, 4, 7, 8)) in calls
    assert not results["C6"].passed
    assert "E7:A_2+A_1" in results["C6"].details


def test_c6_surfaces_runner_errors(atlas):
    def broken(group, indices):
        raise RuntimeError("torus misbehaved")

    results = {r.check_id: r for r in check_consistency(atlas, delta_runner=broken)}
    assert not results["C6"].passed
    assert "torus misbehaved" in results["C6"].details


def test_flip_field_requires_boolean(atlas):
    record = query(atlas, "G2", "A_1")
    with pytest.raises(InputError):
        flip_field(record, "is_special")  # null there
    with pytest.raises(InputError):
        flip_field(record, "no_such_flag")


def test_e1_flip_breaks_two_checks(atlas):
    target = query(atlas, "G2", "Ã_1")
    mutated = tuple(
        flip_field(r, "in_e1") if r.key == target.key else r for r in atlas
    )
    results = {r.check_id: r for r in check_consistency(mutated)}
    assert not results["C1"].passed
    assert not results["C7"].passed


def test_every_primary_flag_flip_is_caught(atlas):
    # the full fault-injection sweep: each paper-cited flag on each record
    flips = 0
    for target in atlas:
        for field in paper_provenanced_fields(target):
            mutated = tuple(
                flip_field(r, field) if r.key == target.key else r for r in atlas
            )
            results = check_consistency(mutated)
            assert any(not c.passed for c in results), (target.key, field)
            flips += 1
    assert flips > 300  # the sweep really covered the table
