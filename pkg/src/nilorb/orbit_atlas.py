"""Curated atlas of exceptional-group nilpotent orbit data, with checks.

Each record stores per-orbit flags (specialness, rigidity, birational
rigidity, boundary codimension, smooth-locus failure, membership in the three
distinguished e-lists) plus an optional Levi descriptor for the integrality
criterion.  Flags may be null when the curated sources leave them open; every
non-null flag carries a provenance string that names where the value comes
from.  Provenance strings start with either "paper §" (the primary source)
or "external: " (companion tabulations).

The module embeds its own expectations for every primary-source flag: the
e-lists, the smooth-locus failure list, the codimension-4 boundary list, the
rigidity tables and the special-orbit list.  The loader refuses data files
that contradict those expectations, and check C7 re-verifies them on whatever
records it is handed, so a single flipped flag is caught no matter how it
enters.  Checks C1 through C7 then exercise the cross-lemma consistency of
the whole table.
"""

from __future__ import annotations

import dataclasses
import difflib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import AtlasLoadError, InputError, OrbitNotFoundError

GROUPS = ("G2", "F4", "E6", "E7", "E8")

PRIMARY_SOURCE_PREFIX = "paper §"
EXTERNAL_SOURCE_PREFIX = "external: "

FLAG_FIELDS = (
    "is_special",
    "is_rigid",
    "is_birationally_rigid",
    "codim4_boundary",
    "fails_smooth_locus_codim4",
    "in_e1",
    "in_e2",
    "in_e3",
)
NULLABLE_FLAGS = FLAG_FIELDS[:5]

_LEVI_RANK = {"E7": 7, "E8": 8}

Key = tuple[str, str]

# --- embedded expectations --------------------------------------------------------

E1_MEMBERS: frozenset[Key] = frozenset(
    {
        ("G2", "Ã_1"),
        ("F4", "Ã_2+A_1"),
        ("E7", "(A_3+A_1)'"),
        ("E8", "A_3+A_1"),
        ("E8", "A_5+A_1"),
        ("E8", "D_5(a_1)+A_2"),
    }
)

E2_MEMBERS: frozenset[Key] = frozenset(
    {
        ("E7", "A_4+A_1"),
        ("E8", "A_4+A_1"),
        ("E8", "E_6(a_1)+A_1"),
    }
)

E3_MEMBERS: frozenset[Key] = frozenset({("E8", "A_4+2A_1")})

SMOOTH_LOCUS_FAILURES: frozenset[Key] = E1_MEMBERS | {
    ("F4", "C_3(a_1)"),
    ("E6", "A_3+A_1"),
    ("E7", "D_6(a_2)"),
    ("E8", "D_6(a_2)"),
    ("E8", "E_6(a_3)+A_1"),
    ("E8", "E_7(a_2)"),
    ("E8", "E_7(a_5)"),
}

CODIM4_BOUNDARY_MEMBERS: frozenset[Key] = frozenset(
    {
        ("G2", "A_1"),
        ("F4", "A_1"),
        ("F4", "Ã_1"),
        ("F4", "A_1+Ã_1"),
        ("F4", "A_2+Ã_1"),
        ("E6", "A_1"),
        ("E6", "2A_1"),
        ("E6", "3A_1"),
        ("E6", "A_2+A_1"),
        ("E6", "A_2+2A_1"),
        ("E6", "2A_2+A_1"),
        ("E7", "A_1"),
        ("E7", "2A_1"),
        ("E7", "(3A_1)'"),
        ("E7", "4A_1"),
        ("E7", "A_2+A_1"),
        ("E7", "A_2+2A_1"),
        ("E7", "2A_2+A_1"),
        ("E7", "A_4+A_1"),
        ("E8", "A_1"),
        ("E8", "2A_1"),
        ("E8", "3A_1"),
        ("E8", "4A_1"),
        ("E8", "A_2"),
        ("E8", "A_2+A_1"),
        ("E8", "A_2+2A_1"),
        ("E8", "A_2+3A_1"),
        ("E8", "2A_2+A_1"),
        ("E8", "2A_2+2A_1"),
        ("E8", "A_3+2A_1"),
        ("E8", "A_3+A_2+A_1"),
        ("E8", "2A_3"),
        ("E8", "D_4(a_1)+A_1"),
        ("E8", "A_4+A_1"),
        ("E8", "A_4+2A_1"),
        ("E8", "A_4+A_3"),
    }
)

RIGID_TRUE_EXPECTED: frozenset[Key] = E1_MEMBERS | {
    ("F4", "A_1+Ã_1"),
    ("E6", "A_1"),
    ("E7", "A_1"),
    ("E7", "2A_1"),
    ("E7", "A_2+2A_1"),
    ("E8", "A_1"),
    ("E8", "2A_1"),
    ("E8", "A_2+2A_1"),
}

RIGID_FALSE_EXPECTED: frozenset[Key] = frozenset(
    {
        ("E7", "A_2+A_1"),
        ("E7", "A_4+A_1"),
        ("E8", "A_4+A_1"),
        ("E8", "A_4+2A_1"),
    }
)

BIRIGID_TRUE_EXPECTED: frozenset[Key] = RIGID_TRUE_EXPECTED | RIGID_FALSE_EXPECTED

BIRIGID_FALSE_EXPECTED: frozenset[Key] = (SMOOTH_LOCUS_FAILURES - E1_MEMBERS) | {
    ("E7", "A_3+A_2"),
    ("E7", "D_5(a_1)"),
    ("E8", "A_3+A_2"),
    ("E8", "D_5(a_1)"),
    ("E8", "E_6(a_1)+A_1"),
    ("E8", "E_7(a_3)"),
    ("E8", "E_7(a_4)"),
}

SPECIAL_TRUE_EXPECTED: frozenset[Key] = frozenset(
    {
        ("E7", "A_2+A_1"),
        ("E7", "A_3+A_2"),
        ("E7", "A_4+A_1"),
        ("E7", "D_5(a_1)"),
        ("E8", "A_3+A_2"),
        ("E8", "A_4+A_1"),
        ("E8", "A_4+2A_1"),
        ("E8", "D_5(a_1)"),
        ("E8", "E_6(a_1)+A_1"),
        ("E8", "E_7(a_3)"),
        ("E8", "E_7(a_4)"),
    }
)

LEVI_DESCRIPTORS: dict[Key, tuple[int, ...]] = {
    ("E7", "A_2+A_1"): (1, 2, 6),
    ("E8", "A_4+2A_1"): (1, 2, 3, 4, 7, 8),
}

# expected value of each primary-source flag: (true set, false set, exhaustive);
# exhaustive means every key outside the true set expects False
_PAPER_EXPECTATIONS: dict[str, tuple[frozenset, frozenset, bool]] = {
    "in_e1": (E1_MEMBERS, frozenset(), True),
    "in_e2": (E2_MEMBERS, frozenset(), True),
    "in_e3": (E3_MEMBERS, frozenset(), True),
    "codim4_boundary": (CODIM4_BOUNDARY_MEMBERS, frozenset(), True),
    "fails_smooth_locus_codim4": (SMOOTH_LOCUS_FAILURES, frozenset(), True),
    "is_special": (SPECIAL_TRUE_EXPECTED, frozenset(), False),
    "is_rigid": (RIGID_TRUE_EXPECTED, RIGID_FALSE_EXPECTED, False),
    "is_birationally_rigid": (BIRIGID_TRUE_EXPECTED, BIRIGID_FALSE_EXPECTED, False),
}

__all__ = [
    "GROUPS",
    "FLAG_FIELDS",
    "PRIMARY_SOURCE_PREFIX",
    "EXTERNAL_SOURCE_PREFIX",
    "E1_MEMBERS",
    "E2_MEMBERS",
    "E3_MEMBERS",
    "SMOOTH_LOCUS_FAILURES",
    "CODIM4_BOUNDARY_MEMBERS",
    "RIGID_TRUE_EXPECTED",
    "RIGID_FALSE_EXPECTED",
    "BIRIGID_TRUE_EXPECTED",
    "BIRIGID_FALSE_EXPECTED",
    "SPECIAL_TRUE_EXPECTED",
    "LEVI_DESCRIPTORS",
    "ExceptionalOrbitRecord",
    "CheckResult",
    "load_atlas",
    "default_atlas_text",
    "query",
    "check_consistency",
    "flip_field",
    "paper_provenanced_fields",
]


@dataclass(frozen=True, eq=True)
class ExceptionalOrbitRecord:
    group: str
    label: str
    is_special: Optional[bool]
    is_rigid: Optional[bool]
    is_birationally_rigid: Optional[bool]
    codim4_boundary: Optional[bool]
    fails_smooth_locus_codim4: Optional[bool]
    in_e1: bool
    in_e2: bool
    in_e3: bool
    levi_descriptor: Optional[tuple[int, ...]]
    provenance: tuple[tuple[str, str], ...]
    comment: Optional[str] = None

    @property
    def key(self) -> Key:
        return (self.group, self.label)

    def flag(self, name: str) -> Optional[bool]:
        if name not in FLAG_FIELDS:
            raise InputError(f"unknown flag field {name!r}")
        return getattr(self, name)

    def provenance_for(self, name: str) -> Optional[str]:
        for field, source in self.provenance:
            if field == name:
                return source
        return None

    def __repr__(self) -> str:
        return f"ExceptionalOrbitRecord({self.group}:{self.label})"


def _fmt(key: Key) -> str:
    return f"{key[0]}:{key[1]}"


def paper_provenanced_fields(record: ExceptionalOrbitRecord) -> tuple[str, ...]:
    """Flag fields of the record whose provenance cites the primary source."""
    return tuple(
        field
        for field, source in record.provenance
        if source.startswith(PRIMARY_SOURCE_PREFIX)
    )


def flip_field(record: ExceptionalOrbitRecord, field: str) -> ExceptionalOrbitRecord:
    """Copy of the record with one boolean flag negated (for fault injection)."""
    value = record.flag(field)
    if not isinstance(value, bool):
        raise InputError(f"cannot flip null flag {field!r} on {record!r}")
    return dataclasses.replace(record, **{field: not value})


def _conformance_issues(records: Iterable[ExceptionalOrbitRecord]) -> list[str]:
    """Primary-source flags that disagree with the embedded expectations."""
    issues = []
    for record in records:
        for field in paper_provenanced_fields(record):
            value = record.flag(field)
            true_set, false_set, exhaustive = _PAPER_EXPECTATIONS[field]
            if record.key in true_set:
                expected: Optional[bool] = True
            elif exhaustive:
                expected = False
            elif record.key in false_set:
                expected = False
            else:
                issues.append(
                    f"{_fmt(record.key)}: {field} cites the primary source but no "
                    f"expectation is embedded for it"
                )
                continue
            if value != expected:
                issues.append(
                    f"{_fmt(record.key)}: {field}={value} contradicts embedded "
                    f"expectation {expected}"
                )
    return issues


# --- loading -----------------------------------------------------------------------

_REQUIRED_KEYS = (
    "group",
    "label",
    "is_special",
    "is_rigid",
    "is_birationally_rigid",
    "codim4_boundary",
    "fails_smooth_locus_codim4",
    "in_e1",
    "in_e2",
    "in_e3",
    "levi_descriptor",
    "provenance",
)
_ALLOWED_KEYS = frozenset(_REQUIRED_KEYS) | {"comment"}


def _as_flag(raw: dict, key: str, nullable: bool):
    value = raw[key]
    if value is None:
        if not nullable:
            raise AtlasLoadError(f"field {key!r} must be a boolean", record=raw)
        return None
    if not isinstance(value, bool):
        raise AtlasLoadError(f"field {key!r} must be a boolean or null", record=raw)
    return value


def _parse_record(raw: object) -> ExceptionalOrbitRecord:
    if not isinstance(raw, dict):
        raise AtlasLoadError(f"record entries must be objects, got {type(raw).__name__}")
    unknown = set(raw) - _ALLOWED_KEYS
    if unknown:
        raise AtlasLoadError(f"unknown record fields: {sorted(unknown)}", record=raw)
    missing = [k for k in _REQUIRED_KEYS if k not in raw]
    if missing:
        raise AtlasLoadError(f"missing record fields: {missing}", record=raw)

    group = raw["group"]
    label = raw["label"]
    if group not in GROUPS:
        raise AtlasLoadError(f"unknown group {group!r}", record=raw)
    if not isinstance(label, str) or not label:
        raise AtlasLoadError("label must be a non-empty string", record=raw)

    flags = {name: _as_flag(raw, name, name in NULLABLE_FLAGS) for name in FLAG_FIELDS}

    levi = raw["levi_descriptor"]
    if levi is not None:
        if group not in _LEVI_RANK:
            raise AtlasLoadError(
                f"levi_descriptor is only meaningful for {sorted(_LEVI_RANK)}",
                record=raw,
            )
        if (
            not isinstance(levi, list)
            or not levi
            or any(not isinstance(i, int) or isinstance(i, bool) for i in levi)
        ):
            raise AtlasLoadError("levi_descriptor must be a list of integers", record=raw)
        if list(levi) != sorted(set(levi)) or levi[0] < 1 or levi[-1] > _LEVI_RANK[group]:
            raise AtlasLoadError(
                f"levi_descriptor must be strictly increasing within 1..{_LEVI_RANK[group]}",
                record=raw,
            )
        levi = tuple(levi)

    prov_raw = raw["provenance"]
    if not isinstance(prov_raw, dict):
        raise AtlasLoadError("provenance must be an object", record=raw)
    for field, source in prov_raw.items():
        if field not in FLAG_FIELDS:
            raise AtlasLoadError(f"provenance for unknown field {field!r}", record=raw)
        if not isinstance(source, str) or not (
            source.startswith(PRIMARY_SOURCE_PREFIX)
            or source.startswith(EXTERNAL_SOURCE_PREFIX)
        ):
            raise AtlasLoadError(
                f"provenance for {field!r} must start with "
                f"{PRIMARY_SOURCE_PREFIX!r} or {EXTERNAL_SOURCE_PREFIX!r}",
                record=raw,
            )
    documented = set(prov_raw)
    stated = {name for name, value in flags.items() if value is not None}
    if documented != stated:
        raise AtlasLoadError(
            f"provenance keys {sorted(documented)} must match the non-null flags "
            f"{sorted(stated)}",
            record=raw,
        )

    comment = raw.get("comment")
    if comment is not None and (not isinstance(comment, str) or not comment):
        raise AtlasLoadError("comment must be a non-empty string", record=raw)

    if flags["is_rigid"] is True and flags["is_birationally_rigid"] is not True:
        raise AtlasLoadError(
            "is_rigid true requires is_birationally_rigid true", record=raw
        )

    return ExceptionalOrbitRecord(
        group=group,
        label=label,
        levi_descriptor=levi,
        provenance=tuple(sorted(prov_raw.items())),
        comment=comment,
        **flags,
    )


def default_atlas_text() -> str:
    return (
        resources.files("nilorb")
        .joinpath("data/exceptional_orbits.json")
        .read_text(encoding="utf-8")
    )


def load_atlas(
    path: Optional[Union[str, Path]] = None,
) -> tuple[ExceptionalOrbitRecord, ...]:
    """Load and validate the atlas; the packaged data file is the default.

    Structural problems, provenance problems, duplicate orbits and
    contradictions with the embedded expectations all raise AtlasLoadError.
    """
    if path is None:
        text = default_atlas_text()
        origin = "packaged atlas"
    else:
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise AtlasLoadError(f"cannot read atlas file {p}: {exc}") from exc
        origin = str(p)

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AtlasLoadError(f"{origin}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"records"}:
        raise AtlasLoadError(f"{origin}: top level must be an object with a 'records' list")
    if not isinstance(doc["records"], list):
        raise AtlasLoadError(f"{origin}: 'records' must be a list")

    records = []
    seen: set[Key] = set()
    for raw in doc["records"]:
        record = _parse_record(raw)
        if record.key in seen:
            raise AtlasLoadError(f"duplicate orbit {_fmt(record.key)}")
        seen.add(record.key)
        records.append(record)

    issues = _conformance_issues(records)
    if issues:
        raise AtlasLoadError(
            f"{origin}: data contradicts embedded expectations: " + "; ".join(issues[:5])
        )
    return tuple(records)


def query(
    records: Sequence[ExceptionalOrbitRecord], group: str, label: str
) -> ExceptionalOrbitRecord:
    """Exact lookup by group and orbit label, with suggestions on a miss."""
    if group not in GROUPS:
        raise InputError(f"unknown group {group!r}; expected one of {', '.join(GROUPS)}")
    for record in records:
        if record.group == group and record.label == label:
            return record
    local = [r.label for r in records if r.group == group]
    near = difflib.get_close_matches(label, local, n=5, cutoff=0.3)
    elsewhere = [
        _fmt(r.key) for r in records if r.label == label and r.group != group
    ]
    suggestions = tuple(near + elsewhere)
    hint = f" (did you mean: {', '.join(suggestions)}?)" if suggestions else ""
    raise OrbitNotFoundError(
        f"no orbit {label!r} in {group}{hint}", suggestions=suggestions
    )


# --- consistency checks ---------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    check_id: str
    name: str
    passed: bool
    details: str = ""

    def to_payload(self) -> dict:
        return {
            "id": self.check_id,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
        }


@lru_cache(maxsize=None)
def _cached_delta_verdict(group: str, indices: tuple[int, ...]) -> str:
    from .delta_check import delta_verdict

    return delta_verdict(group, indices).verdict


def _keys_where(records, predicate) -> set[Key]:
    return {r.key for r in records if predicate(r)}


def _set_mismatch(actual: set, expected: frozenset) -> str:
    extra = sorted(_fmt(k) for k in actual - expected)
    gone = sorted(_fmt(k) for k in expected - actual)
    bits = []
    if extra:
        bits.append(f"unexpected: {', '.join(extra)}")
    if gone:
        bits.append(f"missing: {', '.join(gone)}")
    return "; ".join(bits)


def check_consistency(
    records: Sequence[ExceptionalOrbitRecord], delta_runner=None
) -> tuple[CheckResult, ...]:
    """Run the seven cross-checks; results come back in C1..C7 order.

    ``delta_runner(group, indices) -> verdict`` may be injected; the default
    memoizes the exact computation so repeated sweeps stay cheap.
    """
    runner = delta_runner or _cached_delta_verdict
    results = []

    # C1: birationally rigid orbits failing smooth-locus codim 4 are exactly e1
    both = _keys_where(
        records,
        lambda r: r.is_birationally_rigid is True
        and r.fails_smooth_locus_codim4 is True,
    )
    e1 = _keys_where(records, lambda r: r.in_e1)
    problems = []
    if both != e1:
        extra = sorted(_fmt(k) for k in both ^ e1)
        problems.append(f"set mismatch at: {', '.join(extra)}")
    if len(e1) != 6:
        problems.append(f"e1 has {len(e1)} members, expected 6")
    results.append(
        CheckResult("C1", "e1-characterization", not problems, "; ".join(problems))
    )

    # C2: the non-rigid birationally rigid orbits form the expected quadruple
    quad = _keys_where(
        records,
        lambda r: r.is_birationally_rigid is True and r.is_rigid is False,
    )
    detail = "" if quad == RIGID_FALSE_EXPECTED else _set_mismatch(quad, RIGID_FALSE_EXPECTED)
    results.append(
        CheckResult("C2", "nonrigid-birigid-quadruple", quad == RIGID_FALSE_EXPECTED, detail)
    )

    # C3: rigidity forces birational rigidity record by record
    violations = sorted(
        _fmt(r.key)
        for r in records
        if r.is_rigid is True and r.is_birationally_rigid is not True
    )
    results.append(
        CheckResult(
            "C3",
            "rigid-implies-birigid",
            not violations,
            f"violated by: {', '.join(violations)}" if violations else "",
        )
    )

    # C4: smooth-locus failures match the embedded 13-element list
    smooth = _keys_where(records, lambda r: r.fails_smooth_locus_codim4 is True)
    detail = "" if smooth == SMOOTH_LOCUS_FAILURES else _set_mismatch(smooth, SMOOTH_LOCUS_FAILURES)
    results.append(
        CheckResult("C4", "smooth-locus-failures", smooth == SMOOTH_LOCUS_FAILURES, detail)
    )

    # C5: codimension-4 boundary orbits match the embedded 36-element list
    c4 = _keys_where(records, lambda r: r.codim4_boundary is True)
    detail = "" if c4 == CODIM4_BOUNDARY_MEMBERS else _set_mismatch(c4, CODIM4_BOUNDARY_MEMBERS)
    results.append(
        CheckResult("C5", "codim4-boundary-list", c4 == CODIM4_BOUNDARY_MEMBERS, detail)
    )

    # C6: integrality verdicts agree with e2/e3 membership where a Levi is given
    problems = []
    for record in records:
        if record.levi_descriptor is None:
            continue
        expected = "non-integral" if (record.in_e2 or record.in_e3) else "integral"
        try:
            got = runner(record.group, tuple(record.levi_descriptor))
        except Exception as exc:  # surface, never mask, a broken descriptor
            problems.append(f"{_fmt(record.key)}: {exc}")
            continue
        if got != expected:
            problems.append(
                f"{_fmt(record.key)}: verdict {got}, e-membership implies {expected}"
            )
    results.append(
        CheckResult("C6", "delta-verdict-cross-check", not problems, "; ".join(problems))
    )

    # C7: e-list coherence plus conformance with the embedded expectations
    problems = []
    for record in records:
        if sum((record.in_e1, record.in_e2, record.in_e3)) > 1:
            problems.append(f"{_fmt(record.key)}: in more than one e-list")
        if (record.in_e2 or record.in_e3) and record.is_special is not True:
            problems.append(f"{_fmt(record.key)}: e2/e3 member not marked special")
    for name, expected in (("e1", E1_MEMBERS), ("e2", E2_MEMBERS), ("e3", E3_MEMBERS)):
        actual = _keys_where(records, lambda r, n=name: getattr(r, f"in_{n}"))
        if actual != expected:
            problems.append(f"{name} members: {_set_mismatch(actual, expected)}")
    problems.extend(_conformance_issues(records))
    results.append(
        CheckResult("C7", "e-list-coherence", not problems, "; ".join(problems))
    )

    return tuple(results)
