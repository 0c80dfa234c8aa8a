"""Integrality criterion for a distinguished weight against a central torus.

Given a Levi subsystem L of E7 or E8, the pipeline is:

1. h: the sum of the positive coroots of L.
2. The positive roots beta with pairing(h, beta-coroot) == 1.
3. kappa: the sum of those roots.
4. The central torus lattice of L: coroot-lattice vectors orthogonal to every
   simple root of L, taken together with the all-ones vector and then sliced
   down to the sublattice of representatives with last coordinate zero.  That
   slice is a transversal of the all-ones line, so its rank is
   rank(system) - rank(L).
5. Verdict: "integral" iff kappa pairs to an even integer with every basis
   vector of that lattice.  The parity test is basis-independent (an integer
   unimodular change of basis maps even pairing vectors to even pairing
   vectors in both directions), and kappa may be replaced by any
   representative modulo all-ones without changing any pairing.

Two presets carry recorded reference values; their reports embed a
field-by-field comparison, including one recorded torus pairing that is known
to disagree with the exact recomputation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import InputError, IntegrityError
from .exact_linalg import IntMatrix, LatticeBasis, kernel_lattice
from .reference import WORKED_EXAMPLES, WorkedExample
from .root_system import (
    LeviSubsystem,
    QuotientVector,
    RootSystem,
    build_root_system,
    coroot,
    coroot_lattice,
    lattice_contains_mod_ones,
    levi_subsystem,
    pair,
)

Pairing = Union[int, Fraction]

PRESETS: dict[str, tuple[str, tuple[int, ...]]] = {
    "E7:A2+A1": ("E7", (1, 2, 6)),
    "E8:A4+2A1": ("E8", (1, 2, 3, 4, 7, 8)),
}

__all__ = [
    "PRESETS",
    "MemberCheck",
    "ReferenceComparison",
    "DeltaReport",
    "principal_h",
    "roots_pairing_one",
    "kappa_weight",
    "central_torus_lattice",
    "delta_verdict",
    "preset_report",
]


def principal_h(levi: LeviSubsystem) -> QuotientVector:
    """Sum of the positive coroots of the Levi subsystem."""
    if not levi.positive_roots:
        raise InputError("levi subsystem has no positive roots; h is undefined")
    acc = QuotientVector((0,) * levi.system.ambient_dim)
    for root in levi.positive_roots:
        acc = acc + coroot(root)
    return acc


def roots_pairing_one(rs: RootSystem, h: QuotientVector) -> tuple[QuotientVector, ...]:
    """Positive roots whose coroot pairs to exactly 1 against h, in the
    system's enumeration order."""
    return tuple(r for r in rs.positive_roots if pair(h, coroot(r)) == 1)


def kappa_weight(rs: RootSystem, h: QuotientVector) -> QuotientVector:
    acc = QuotientVector((0,) * rs.ambient_dim)
    for r in roots_pairing_one(rs, h):
        acc = acc + r
    return acc


def _combine(coeffs: Iterable[int], vectors) -> tuple[int, ...]:
    vectors = list(vectors)
    dim = len(vectors[0]) if vectors else 0
    acc = [0] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for j in range(dim):
                acc[j] += c * v[j]
    return tuple(acc)


def central_torus_lattice(levi: LeviSubsystem) -> LatticeBasis:
    """Lattice of coroot-lattice vectors centralizing the Levi.

    Computed inside the ambient integer lattice: take the sublattice of the
    coroot lattice pairing to zero with every simple root of the Levi, adjoin
    the all-ones vector, and keep the slice whose last coordinate vanishes.
    The slice fixes one representative per all-ones coset, which matches how
    quotient vectors canonicalize for display.
    """
    rs = levi.system
    d = rs.ambient_dim
    ambient_basis = coroot_lattice(rs.name)
    simples = [rs.simple_roots[i - 1] for i in levi.indices]

    # integer constraint matrix: d * pairing(alpha, basis vector)
    rows = []
    for alpha in simples:
        row = []
        for bvec in ambient_basis.vectors:
            value = d * pair(alpha, QuotientVector(bvec))
            if not isinstance(value, int):
                raise IntegrityError("pairing against an integer vector must clear d")
            row.append(value)
        rows.append(row)
    constraint = IntMatrix.from_rows(rows, cols=ambient_basis.rank)
    coeff_kernel = kernel_lattice(constraint)

    generators = [_combine(c, ambient_basis.vectors) for c in coeff_kernel.vectors]
    generators.append((1,) * d)
    full = LatticeBasis(d, tuple(generators))

    # slice to last coordinate zero: kernel of the last-coordinate functional
    # expressed on the basis coefficients of the full lattice
    last_coords = IntMatrix.from_rows([[v[-1] for v in full.vectors]])
    slice_coeffs = kernel_lattice(last_coords)
    slice_vectors = tuple(_combine(c, full.vectors) for c in slice_coeffs.vectors)
    result = LatticeBasis(d, slice_vectors)

    expected_rank = rs.rank - levi.rank
    if result.rank != expected_rank:
        raise IntegrityError(
            f"torus lattice rank {result.rank}, expected {expected_rank}"
        )
    return result


@dataclass(frozen=True)
class MemberCheck:
    """One reference torus vector re-verified against the computed lattice."""

    coords: tuple[int, ...]
    in_lattice: bool
    pairing: Pairing
    expected_pairing: Optional[int] = None
    note: str = ""

    @property
    def matches(self) -> Optional[bool]:
        if self.expected_pairing is None:
            return None
        return self.pairing == self.expected_pairing


@dataclass(frozen=True)
class ReferenceComparison:
    preset: str
    h_matches: bool
    roots_match: bool
    kappa_matches: bool
    verdict_matches: bool
    torus_rank_matches: bool
    member_checks: tuple[MemberCheck, ...]

    @property
    def clean(self) -> bool:
        """True when every comparison, including member pairings, agrees."""
        return (
            self.h_matches
            and self.roots_match
            and self.kappa_matches
            and self.verdict_matches
            and self.torus_rank_matches
            and all(mc.in_lattice for mc in self.member_checks)
            and all(mc.matches is not False for mc in self.member_checks)
        )


@dataclass(frozen=True, eq=False)
class DeltaReport:
    system: str
    levi_indices: tuple[int, ...]
    h: QuotientVector
    roots_pairing_one: tuple[QuotientVector, ...]
    kappa: QuotientVector
    torus_basis: tuple[tuple[int, ...], ...]
    pairings: tuple[Pairing, ...]
    verdict: str
    reference: Optional[ReferenceComparison] = None

    @property
    def is_integral(self) -> bool:
        return self.verdict == "integral"

    @property
    def torus_rank(self) -> int:
        return len(self.torus_basis)

    def to_payload(self) -> dict:
        """JSON-ready dictionary with canonical coordinate representatives."""

        def scalar(x: Pairing):
            return x if isinstance(x, int) else str(x)

        payload = {
            "system": self.system,
            "levi": list(self.levi_indices),
            "h": list(self.h.canonical_coords),
            "roots_pairing_one": [list(r.canonical_coords) for r in self.roots_pairing_one],
            "kappa": list(self.kappa.canonical_coords),
            "torus_basis": [list(v) for v in self.torus_basis],
            "pairings": [scalar(p) for p in self.pairings],
            "verdict": self.verdict,
        }
        if self.reference is not None:
            payload["reference"] = {
                "preset": self.reference.preset,
                "h_matches": self.reference.h_matches,
                "roots_match": self.reference.roots_match,
                "kappa_matches": self.reference.kappa_matches,
                "verdict_matches": self.reference.verdict_matches,
                "torus_rank_matches": self.reference.torus_rank_matches,
                "clean": self.reference.clean,
                "member_checks": [
                    {
                        "coords": list(mc.coords),
                        "in_lattice": mc.in_lattice,
                        "pairing": scalar(mc.pairing),
                        "expected_pairing": mc.expected_pairing,
                        "matches": mc.matches,
                        "note": mc.note,
                    }
                    for mc in self.reference.member_checks
                ],
            }
        return payload


def _verdict(pairings: Iterable[Pairing]) -> str:
    ok = all(isinstance(p, int) and p % 2 == 0 for p in pairings)
    return "integral" if ok else "non-integral"


def delta_verdict(system: str, levi_indices: Iterable[int]) -> DeltaReport:
    """Run the full criterion for a Levi given by simple-root labels."""
    rs = build_root_system(system)
    levi = levi_subsystem(rs, tuple(levi_indices))
    h = principal_h(levi)
    roots = roots_pairing_one(rs, h)
    kap = kappa_weight(rs, h)
    torus = central_torus_lattice(levi)
    pairings = tuple(pair(kap, QuotientVector(v)) for v in torus.vectors)
    return DeltaReport(
        system=rs.name,
        levi_indices=levi.indices,
        h=h,
        roots_pairing_one=roots,
        kappa=kap,
        torus_basis=torus.vectors,
        pairings=pairings,
        verdict=_verdict(pairings),
    )


def _compare(report: DeltaReport, example: WorkedExample) -> ReferenceComparison:
    torus = LatticeBasis(report.h.dim, report.torus_basis)
    checks = []
    for fixture in example.torus_members:
        member = QuotientVector(fixture.coords)
        checks.append(
            MemberCheck(
                coords=fixture.coords,
                in_lattice=lattice_contains_mod_ones(torus, member),
                pairing=pair(report.kappa, member),
                expected_pairing=fixture.expected_pairing,
                note=fixture.note,
            )
        )
    return ReferenceComparison(
        preset=example.preset,
        h_matches=report.h == QuotientVector(example.h),
        roots_match=set(report.roots_pairing_one)
        == {QuotientVector(t) for t in example.roots_pairing_one},
        kappa_matches=report.kappa == QuotientVector(example.kappa),
        verdict_matches=report.verdict == example.verdict,
        torus_rank_matches=report.torus_rank == example.torus_rank,
        member_checks=tuple(checks),
    )


def preset_report(preset: str) -> DeltaReport:
    """delta_verdict for a named preset, with the reference comparison filled in."""
    if preset not in PRESETS:
        raise InputError(
            f"unknown preset {preset!r}; available: {', '.join(sorted(PRESETS))}"
        )
    system, indices = PRESETS[preset]
    report = delta_verdict(system, indices)
    comparison = _compare(report, WORKED_EXAMPLES[preset])
    return DeltaReport(
        system=report.system,
        levi_indices=report.levi_indices,
        h=report.h,
        roots_pairing_one=report.roots_pairing_one,
        kappa=report.kappa,
        torus_basis=report.torus_basis,
        pairings=report.pairings,
        verdict=report.verdict,
        reference=comparison,
    )
