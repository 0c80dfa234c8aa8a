"""E7 and E8 root systems in quotient coordinates, with exact pairing.

Both systems are realized inside R^d modulo the line spanned by the all-ones
vector: E7 uses d = 8, E8 uses d = 9, and the rank is d - 1 in each case.
Vectors are compared modulo rational multiples of the all-ones vector, and the
bilinear form is the standard dot product corrected so that it descends to the
quotient.  All arithmetic is integer or Fraction; nothing is approximated.

Simple roots are not hard-coded.  They are derived from the positive roots
(a positive root is simple iff it is not a sum of two positive roots, tested
in the quotient) and then labeled by a deterministic rule; the resulting
diagram is checked against the abstract E-series tree before use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .errors import CapabilityError, InputError, IntegrityError
from .exact_linalg import LatticeBasis, lattice_contains

Scalar = Union[int, Fraction]

ROOT_SYSTEM_NAMES = ("E7", "E8")

__all__ = [
    "ROOT_SYSTEM_NAMES",
    "QuotientVector",
    "RootSystem",
    "LeviSubsystem",
    "build_root_system",
    "pair",
    "coroot",
    "cartan_matrix",
    "coroot_lattice",
    "lattice_contains_mod_ones",
    "levi_subsystem",
]


def _normalize(value) -> Scalar:
    if isinstance(value, bool):
        raise InputError(f"coordinates must be numbers, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    raise InputError(f"coordinates must be int or Fraction, got {value!r}")


@dataclass(frozen=True, eq=False)
class QuotientVector:
    """A vector in R^d considered modulo rational multiples of all-ones.

    Equality and hashing use the canonical representative whose last
    coordinate is zero, so two raw coordinate tuples that differ by a multiple
    of the all-ones vector compare equal.
    """

    coords: tuple[Scalar, ...]

    def __post_init__(self):
        coords = tuple(_normalize(c) for c in self.coords)
        if not coords:
            raise InputError("empty coordinate tuple")
        object.__setattr__(self, "coords", coords)
        t = coords[-1]
        canon = coords if t == 0 else tuple(_normalize(c - t) for c in coords)
        object.__setattr__(self, "_canon", canon)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def canonical_coords(self) -> tuple[Scalar, ...]:
        return self._canon

    def canonical(self) -> "QuotientVector":
        return QuotientVector(self._canon)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._canon)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotientVector):
            return NotImplemented
        return self._canon == other._canon

    def __hash__(self) -> int:
        return hash(self._canon)

    def __add__(self, other: "QuotientVector") -> "QuotientVector":
        self._check_dim(other)
        return QuotientVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QuotientVector") -> "QuotientVector":
        self._check_dim(other)
        return QuotientVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "QuotientVector":
        return QuotientVector(tuple(-a for a in self.coords))

    def __mul__(self, scalar) -> "QuotientVector":
        s = _normalize(scalar) if not isinstance(scalar, Fraction) else scalar
        return QuotientVector(tuple(a * s for a in self.coords))

    __rmul__ = __mul__

    def _check_dim(self, other: "QuotientVector") -> None:
        if self.dim != other.dim:
            raise InputError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __repr__(self) -> str:
        return f"QuotientVector({self._canon!r})"


def pair(x: QuotientVector, y: QuotientVector):
    """The invariant form: dot(x, y) - sum(x) * sum(y) / d.

    Well-defined on the quotient: replacing x by x + t*ones changes neither
    term's difference.  Returns int when the value is integral, Fraction
    otherwise.
    """
    if x.dim != y.dim:
        raise InputError(f"dimension mismatch: {x.dim} vs {y.dim}")
    d = x.dim
    dot = sum(a * b for a, b in zip(x.coords, y.coords))
    sx = sum(x.coords)
    sy = sum(y.coords)
    num = d * dot - sx * sy
    if isinstance(num, int):
        q, r = divmod(num, d)
        return q if r == 0 else Fraction(num, d)
    value = num / d
    return int(value) if value.denominator == 1 else value


def coroot(root: QuotientVector) -> QuotientVector:
    """Coroot of a root.  All E7/E8 roots have pairing norm 2, so the coroot
    coincides with the root itself; the norm is still checked."""
    if pair(root, root) != 2:
        raise InputError(f"not a norm-2 root: {root!r}")
    return root


def _positive_roots_e7() -> list[QuotientVector]:
    roots = []
    for i, j in itertools.combinations(range(7), 2):
        c = [0] * 8
        c[i], c[j] = 1, -1
        roots.append(QuotientVector(tuple(c)))
    for j in range(7):
        c = [0] * 8
        c[7], c[j] = 1, -1
        roots.append(QuotientVector(tuple(c)))
    for i, j, k in itertools.combinations(range(7), 3):
        c = [0] * 8
        c[i] = c[j] = c[k] = c[7] = 1
        roots.append(QuotientVector(tuple(c)))
    return roots


def _positive_roots_e8() -> list[QuotientVector]:
    roots = []
    for i, j in itertools.combinations(range(9), 2):
        c = [0] * 9
        c[i], c[j] = 1, -1
        roots.append(QuotientVector(tuple(c)))
    for i, j, k in itertools.combinations(range(8), 3):
        c = [0] * 9
        c[i] = c[j] = c[k] = 1
        roots.append(QuotientVector(tuple(c)))
    for i, j in itertools.combinations(range(8), 2):
        c = [0] * 9
        c[i] = c[j] = c[8] = -1
        roots.append(QuotientVector(tuple(c)))
    return roots


_REALIZATIONS = {
    "E7": (8, _positive_roots_e7),
    "E8": (9, _positive_roots_e8),
}


def derive_simple_roots(positive_roots: Sequence[QuotientVector], rank: int) -> tuple[QuotientVector, ...]:
    """Simple roots from first principles, in a deterministic label order.

    A positive root is simple iff it is not the sum of two positive roots.
    The sum test runs in the quotient; over raw coordinates some composites
    would masquerade as simple.  Labels sort by support size of the canonical
    representative, then by descending lexicographic order, which lines the
    difference roots up as an A-chain followed by the branch root.
    """
    pos_set = set(positive_roots)
    composite = set()
    for a, b in itertools.combinations_with_replacement(positive_roots, 2):
        s = a + b
        if s in pos_set:
            composite.add(s)
    simples = [r for r in positive_roots if r not in composite]
    if len(simples) != rank:
        raise IntegrityError(
            f"derived {len(simples)} simple roots, expected rank {rank}"
        )

    def label_key(v: QuotientVector):
        canon = v.canonical_coords
        support = sum(1 for c in canon if c != 0)
        return (support, tuple(-c for c in canon))

    return tuple(sorted(simples, key=label_key))


def _decompose(root: QuotientVector, simples: Sequence[QuotientVector], pos_set) -> tuple[int, ...]:
    # peel off simple roots by descent; valid for norm-2 positive roots
    coeffs = [0] * len(simples)
    current = root
    for _ in range(4 * len(pos_set)):
        if current.is_zero():
            return tuple(coeffs)
        for idx, alpha in enumerate(simples):
            if pair(current, alpha) > 0:
                rest = current - alpha
                if rest.is_zero() or rest in pos_set:
                    coeffs[idx] += 1
                    current = rest
                    break
        else:
            break
    raise IntegrityError(f"descent failed to decompose {root!r}")


def _tree_edges(arms: Sequence[int]) -> tuple[int, frozenset]:
    """T-shaped tree: a center vertex with paths of the given lengths."""
    edges = set()
    n = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.add(frozenset((prev, n)))
            prev = n
            n += 1
    return n, frozenset(edges)


def _graphs_isomorphic(n: int, edges_a: frozenset, edges_b: frozenset) -> bool:
    if len(edges_a) != len(edges_b):
        return False
    deg_a = [sum(1 for e in edges_a if v in e) for v in range(n)]
    deg_b = [sum(1 for e in edges_b if v in e) for v in range(n)]
    if sorted(deg_a) != sorted(deg_b):
        return False

    mapping: dict[int, int] = {}
    used = set()

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if w in used or deg_a[v] != deg_b[w]:
                continue
            ok = True
            for u in range(v):
                if (frozenset((v, u)) in edges_a) != (frozenset((w, mapping[u])) in edges_b):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(v + 1):
                    return True
                used.discard(w)
                del mapping[v]
        return False

    return extend(0)


_EXPECTED_ARMS = {"E7": (3, 2, 1), "E8": (4, 2, 1)}


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A built root system: positives, labeled simples, coefficient table."""

    name: str
    ambient_dim: int
    rank: int
    positive_roots: tuple[QuotientVector, ...]
    simple_roots: tuple[QuotientVector, ...]
    coefficient_table: dict

    def coefficients(self, root: QuotientVector) -> tuple[int, ...]:
        """Coefficients of a positive root over the labeled simple roots."""
        try:
            return self.coefficient_table[root]
        except KeyError:
            raise InputError(f"not a positive root of {self.name}: {root!r}") from None

    def is_positive_root(self, v: QuotientVector) -> bool:
        return v in self.coefficient_table

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, {len(self.positive_roots)} positive roots)"


def cartan_matrix(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(pair(a, b) for b in rs.simple_roots) for a in rs.simple_roots
    )


@lru_cache(maxsize=None)
def build_root_system(name: str) -> RootSystem:
    """Construct and validate a root system by name ("E7" or "E8")."""
    if name not in _REALIZATIONS:
        raise CapabilityError(
            f"unsupported root system {name!r}; available: {', '.join(ROOT_SYSTEM_NAMES)}"
        )
    ambient_dim, generate = _REALIZATIONS[name]
    rank = ambient_dim - 1
    positives = tuple(generate())

    expected_count = {"E7": 63, "E8": 120}[name]
    if len(positives) != expected_count or len(set(positives)) != expected_count:
        raise IntegrityError(f"{name}: positive root enumeration is wrong")
    for r in positives:
        if pair(r, r) != 2:
            raise IntegrityError(f"{name}: root of wrong norm: {r!r}")

    simples = derive_simple_roots(positives, rank)

    # the derived diagram must be the right T-shaped tree
    edges = frozenset(
        frozenset((i, j))
        for i, j in itertools.combinations(range(rank), 2)
        if pair(simples[i], simples[j]) != 0
    )
    n_expected, expected_edges = _tree_edges(_EXPECTED_ARMS[name])
    if n_expected != rank or not _graphs_isomorphic(rank, edges, expected_edges):
        raise IntegrityError(f"{name}: derived diagram has the wrong shape")

    pos_set = set(positives)
    table = {root: _decompose(root, simples, pos_set) for root in positives}
    return RootSystem(name, ambient_dim, rank, positives, simples, table)


@dataclass(frozen=True, eq=False)
class LeviSubsystem:
    """Positive roots supported on a subset of simple-root labels."""

    system: RootSystem
    indices: tuple[int, ...]
    positive_roots: tuple[QuotientVector, ...]

    @property
    def rank(self) -> int:
        return len(self.indices)

    def __repr__(self) -> str:
        return f"LeviSubsystem({self.system.name}, indices={self.indices})"


def levi_subsystem(rs: RootSystem, indices: Iterable[int]) -> LeviSubsystem:
    """Sub-root-system of positives whose simple support lies in ``indices``.

    Indices are 1-based simple-root labels.
    """
    idx = tuple(indices)
    if len(set(idx)) != len(idx):
        raise InputError(f"duplicate levi indices: {idx}")
    for i in idx:
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= rs.rank:
            raise InputError(f"levi index {i!r} out of range 1..{rs.rank}")
    allowed = set(idx)
    members = tuple(
        root
        for root in rs.positive_roots
        if all(c == 0 or (k + 1) in allowed for k, c in enumerate(rs.coefficients(root)))
    )
    return LeviSubsystem(rs, tuple(sorted(idx)), members)


@lru_cache(maxsize=None)
def coroot_lattice(name: str) -> LatticeBasis:
    """Integer span of all coroots, as a lattice in the ambient Z^d."""
    rs = build_root_system(name)
    gens = tuple(tuple(r.coords) for r in rs.positive_roots)
    return LatticeBasis(rs.ambient_dim, gens)


def lattice_contains_mod_ones(basis: LatticeBasis, vector: QuotientVector) -> bool:
    """Membership in the lattice spanned by ``basis`` and the all-ones vector.

    This is the right containment test for quotient vectors: a representative
    is free to slide along the all-ones line.
    """
    if not vector.is_integral():
        raise InputError(f"lattice membership needs integer coordinates: {vector!r}")
    if vector.dim != basis.ambient_dim:
        raise InputError(f"dimension mismatch: {vector.dim} vs {basis.ambient_dim}")
    ones = tuple(1 for _ in range(basis.ambient_dim))
    augmented = LatticeBasis(basis.ambient_dim, basis.vectors + (ones,))
    return lattice_contains(augmented, tuple(vector.coords)) is not None
