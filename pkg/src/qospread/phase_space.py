"""Symplectic phase space over Z_p: points, subspaces and exact set checks.

A phase point for m tensor factors stores 2m coordinates in the interleaved
layout (k_1, l_1, k_2, l_2, ..., k_m, l_m): per factor the shift exponent
k_i, then the clock exponent l_i.  The alternating form is

    u o v = sum_i  k_i l'_i - k'_i l_i     (mod p),

whose vanishing characterises commuting Weyl monomials.  ``nfactors``
restricts the sum to the leading factors; the first-block-only form is what
governs commutation when the trailing factors carry only clock operators.

Points with four GF(p^k) coordinates (``GFPhasePoint``) convert to Z_p
points through ``pi1``: odd GF coordinates expand over the power basis
{1, t, ..., t^{k-1}}, even ones over its trace-dual basis, and the blocks
are interleaved factor by factor.  By construction the field trace carries
the GF form to the Z_p form,

    Tr(a o b) = pi1(a) o pi1(b),

exactly, for the full form and for the first-block form alike; the property
suite re-verifies this rather than trusting the construction.

``Subspace`` canonicalises its generators to the reduced row echelon basis
over Z_p, so equal spans compare equal and serialise identically.  All the
set-theoretic checks here (pairwise trivial intersection, spread/partition,
union comparison) are exact integer combinatorics; nothing in this module
touches floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from . import _modlin
from .finite_field import FieldSpec, GFElement, field_trace
from .report import VerificationReport

SPAN_LIMIT = 10**6

NONDEGENERATE = "nondegenerate"
ISOTROPIC = "isotropic"
MIXED = "mixed"


@dataclass(frozen=True)
class PhasePoint:
    """A vector in Z_p^{2m}, indexing one Weyl monomial over m factors."""

    p: int
    m: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != 2 * self.m:
            raise ValueError(f"expected {2 * self.m} coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(int(c) % self.p for c in self.coords))

    @classmethod
    def zero(cls, p: int, m: int) -> "PhasePoint":
        return cls(p, m, (0,) * (2 * m))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "PhasePoint") -> None:
        if (self.p, self.m) != (other.p, other.m):
            raise ValueError(f"ambient mismatch: Z_{self.p}^{2*self.m} vs Z_{other.p}^{2*other.m}")

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        self._check(other)
        return PhasePoint(self.p, self.m, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "PhasePoint") -> "PhasePoint":
        self._check(other)
        return PhasePoint(self.p, self.m, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "PhasePoint":
        return PhasePoint(self.p, self.m, tuple(-x for x in self.coords))

    def __rmul__(self, c: int) -> "PhasePoint":
        if not isinstance(c, int):
            return NotImplemented
        return PhasePoint(self.p, self.m, tuple(c * x for x in self.coords))


def symplectic_product(u: PhasePoint, v: PhasePoint, nfactors: int | None = None) -> int:
    """The alternating form sum_i k_i l'_i - k'_i l_i mod p.

    ``nfactors`` restricts the sum to the leading factors (the first-block
    form used when the trailing factors are commutative).
    """
    u._check(v)
    n = u.m if nfactors is None else nfactors
    total = 0
    for i in range(n):
        total += u.coords[2 * i] * v.coords[2 * i + 1] - v.coords[2 * i] * u.coords[2 * i + 1]
    return total % u.p


@dataclass(frozen=True)
class GFPhasePoint:
    """A vector in GF(p^k)^4: two (shift, clock) coordinate pairs over the field."""

    coords: tuple[GFElement, GFElement, GFElement, GFElement]

    def __post_init__(self) -> None:
        if len(self.coords) != 4:
            raise ValueError("a GF phase point has exactly four coordinates")
        f = self.coords[0].field
        if any(c.field != f for c in self.coords):
            raise ValueError("all four coordinates must come from one field")

    @property
    def field(self) -> FieldSpec:
        return self.coords[0].field

    @classmethod
    def zero(cls, field: FieldSpec) -> "GFPhasePoint":
        z = field.zero()
        return cls((z, z, z, z))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    def scale(self, s: GFElement) -> "GFPhasePoint":
        return GFPhasePoint(tuple(s * c for c in self.coords))

    def __add__(self, other: "GFPhasePoint") -> "GFPhasePoint":
        return GFPhasePoint(tuple(x + y for x, y in zip(self.coords, other.coords)))


def gf_symplectic(a: GFPhasePoint, b: GFPhasePoint, partial: bool = False) -> GFElement:
    """The GF(p^k)-valued form a1 b2 - a2 b1 (+ a3 b4 - a4 b3 unless partial)."""
    if a.field != b.field:
        raise ValueError(f"mixed fields: {a.field} vs {b.field}")
    a1, a2, a3, a4 = a.coords
    b1, b2, b3, b4 = b.coords
    out = a1 * b2 - a2 * b1
    if not partial:
        out = out + a3 * b4 - a4 * b3
    return out


def dual_coords(z: GFElement) -> tuple[int, ...]:
    """Coordinates of z over the trace-dual of the power basis: (Tr(z t^i))_i."""
    return tuple(field_trace(z * tp) for tp in z.field.power_basis())


def pi1(a: GFPhasePoint, partial: bool = False) -> PhasePoint:
    """Z_p-linear bijection GF(p^k)^4 -> Z_p^{4k} compatible with the forms.

    Coordinates 1 and 3 expand over the power basis, 2 and 4 over its
    trace-dual basis, interleaved (shift, clock) per factor.  The map sends
    (*,*,0,0) to (*,*,0,0) and (0,0,*,*) to (0,0,*,*) blockwise, and one and
    the same map satisfies both the full and the first-block trace
    identities, so ``partial`` does not change the output; the flag mirrors
    ``gf_symplectic`` for callers that track which form they mean.
    """
    del partial
    field = a.field
    p, k = field.p, field.k
    a1, a2, a3, a4 = a.coords
    u1, u3 = a1.coords, a3.coords
    u2, u4 = dual_coords(a2), dual_coords(a4)
    coords: list[int] = []
    for i in range(k):
        coords += (u1[i], u2[i])
    for i in range(k):
        coords += (u3[i], u4[i])
    return PhasePoint(p, 2 * k, tuple(coords))


def to_blocked(u: PhasePoint) -> tuple[int, ...]:
    """Reorder interleaved coordinates into four length-k blocks (m = 2k only)."""
    if u.m % 2:
        raise ValueError("blocked layout needs an even number of factors")
    k = u.m // 2
    shifts = [u.coords[2 * i] for i in range(u.m)]
    clocks = [u.coords[2 * i + 1] for i in range(u.m)]
    return tuple(shifts[:k] + clocks[:k] + shifts[k:] + clocks[k:])


def from_blocked(p: int, blocked: Sequence[int]) -> PhasePoint:
    """Inverse of :func:`to_blocked`."""
    if len(blocked) % 4:
        raise ValueError("blocked layout has 4k coordinates")
    k = len(blocked) // 4
    u1, u2, u3, u4 = (blocked[i * k:(i + 1) * k] for i in range(4))
    coords: list[int] = []
    for i in range(k):
        coords += (u1[i], u2[i])
    for i in range(k):
        coords += (u3[i], u4[i])
    return PhasePoint(p, 2 * k, tuple(coords))


def concat(u: PhasePoint, v: PhasePoint) -> PhasePoint:
    """Point of the joined ambient: u on the leading factors, v on the trailing."""
    if u.p != v.p:
        raise ValueError("cannot concatenate points over different primes")
    return PhasePoint(u.p, u.m + v.m, u.coords + v.coords)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Z_p^{2m}, held as its canonical echelon basis.

    Two subspaces are equal (and hash equal) exactly when their spans are
    equal; the canonical basis also fixes the serialisation and the span
    enumeration order.
    """

    p: int
    m: int
    basis: tuple[PhasePoint, ...]

    @classmethod
    def from_generators(cls, p: int, m: int, generators: Iterable) -> "Subspace":
        pts = []
        for g in generators:
            pt = g if isinstance(g, PhasePoint) else PhasePoint(p, m, tuple(g))
            if (pt.p, pt.m) != (p, m):
                raise ValueError("generator ambient mismatch")
            pts.append(pt)
        ech, _ = _modlin.rref([pt.coords for pt in pts], p)
        return cls(p, m, tuple(PhasePoint(p, m, row) for row in ech))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, pt: PhasePoint) -> bool:
        if (pt.p, pt.m) != (self.p, self.m):
            return False
        rows = [b.coords for b in self.basis] + [pt.coords]
        return _modlin.rank(rows, self.p) == self.dim


def span_enumerate(s: Subspace, limit: int = SPAN_LIMIT) -> list[PhasePoint]:
    """All p^dim points of the span (zero first), in coefficient order."""
    total = s.p**s.dim
    if total > limit:
        raise ValueError(f"span has {total} points, above the limit {limit}")
    zero = PhasePoint.zero(s.p, s.m)
    points = []
    for coeffs in itertools.product(range(s.p), repeat=s.dim):
        acc = zero
        for c, b in zip(coeffs, s.basis):
            if c:
                acc = acc + c * b
        points.append(acc)
    return points


@lru_cache(maxsize=None)
def _nonzero_coords(s: Subspace) -> frozenset[tuple[int, ...]]:
    return frozenset(pt.coords for pt in span_enumerate(s) if not pt.is_zero)


def intersect_trivially(a: Subspace, b: Subspace) -> bool:
    """Exact rank test: dim(a + b) = dim a + dim b iff the intersection is 0."""
    if (a.p, a.m) != (b.p, b.m):
        raise ValueError("ambient mismatch")
    rows = [pt.coords for pt in a.basis + b.basis]
    return _modlin.rank(rows, a.p) == a.dim + b.dim


def _shared_point(a: Subspace, b: Subspace) -> PhasePoint:
    """A nonzero point of a meet b (callers ensure the meet is nontrivial)."""
    rows = [pt.coords for pt in a.basis + b.basis]
    dep = _modlin.dependency(rows, a.p)
    if dep is None:
        raise AssertionError("no dependency found for a nontrivial intersection")
    acc = PhasePoint.zero(a.p, a.m)
    for c, pt in zip(dep[: a.dim], a.basis):
        if c:
            acc = acc + c * pt
    return acc


def check_pairwise_trivial(
    subspaces: Sequence[Subspace], labels: Sequence[str] | None = None
) -> VerificationReport:
    """Pass iff every pair of distinct members meets only in 0.

    Enumerable members are compared as exact point sets; oversize ones fall
    back to the rank test.  On failure the report names an offending pair
    and a shared nonzero point.
    """
    labels = list(labels) if labels is not None else [f"member {i}" for i in range(len(subspaces))]
    sets = []
    for s in subspaces:
        sets.append(_nonzero_coords(s) if s.p**s.dim <= SPAN_LIMIT else None)
    failures = []
    checks = 0
    for i in range(len(subspaces)):
        for j in range(i + 1, len(subspaces)):
            checks += 1
            if sets[i] is not None and sets[j] is not None:
                if not sets[i].isdisjoint(sets[j]):
                    witness = min(sets[i] & sets[j])
                    failures.append((f"{labels[i]} & {labels[j]}", f"shared nonzero point {witness}"))
            elif not intersect_trivially(subspaces[i], subspaces[j]):
                witness = _shared_point(subspaces[i], subspaces[j]).coords
                failures.append((f"{labels[i]} & {labels[j]}", f"shared nonzero point {witness}"))
    return VerificationReport(passed=not failures, checks_run=checks, failures=failures)


def check_partition(
    subspaces: Sequence[Subspace],
    labels: Sequence[str] | None = None,
    against: Sequence[Subspace] | None = None,
    limit: int = SPAN_LIMIT,
) -> VerificationReport:
    """Pass iff the members' nonzero points are disjoint and cover the target.

    The default target is the whole nonzero ambient Z_p^{2m} \\ {0}; passing
    ``against`` compares to the union of a second family instead.
    """
    labels = list(labels) if labels is not None else [f"member {i}" for i in range(len(subspaces))]
    sets = [_nonzero_coords(s) for s in subspaces]
    union: set[tuple[int, ...]] = set()
    for s in sets:
        union |= s
    total = sum(len(s) for s in sets)
    failures = []
    checks = len(subspaces)
    if total != len(union):
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if not sets[i].isdisjoint(sets[j]):
                    failures.append(
                        (f"{labels[i]} & {labels[j]}",
                         f"{len(sets[i] & sets[j])} shared nonzero points")
                    )
                    break
            if failures:
                break
    if against is None:
        if not subspaces:
            raise ValueError("empty family")
        p, m = subspaces[0].p, subspaces[0].m
        ambient = p ** (2 * m)
        if ambient > limit:
            raise ValueError(f"ambient has {ambient} points, above the limit {limit}")
        expected = ambient - 1
        if len(union) != expected:
            failures.append(("family", f"covers {len(union)} of {expected} nonzero points"))
    else:
        target: set[tuple[int, ...]] = set()
        for s in against:
            target |= _nonzero_coords(s)
        expected = len(target)
        if union != target:
            failures.append(
                ("family",
                 f"union differs from target: {len(union - target)} extra, {len(target - union)} missing")
            )
    return VerificationReport(
        passed=not failures,
        checks_run=checks,
        failures=failures,
        covered=len(union),
        expected=expected,
    )


class Classification(NamedTuple):
    kind: str  # NONDEGENERATE, ISOTROPIC or MIXED
    gram_rank: int


def classify_subspace(s: Subspace) -> Classification:
    """Rank of the symplectic Gram matrix of the canonical basis.

    Nondegenerate (rank = dim) spans generate a full matrix algebra; an
    isotropic span (zero Gram) generates a commutative one.
    """
    gram = [[symplectic_product(bi, bj) for bj in s.basis] for bi in s.basis]
    if all(not any(row) for row in gram):
        return Classification(ISOTROPIC, 0)
    r = _modlin.rank(gram, s.p)
    return Classification(NONDEGENERATE if r == s.dim else MIXED, r)


def symplectic_basis(s: Subspace) -> list[PhasePoint]:
    """A basis (s_1..s_k, w_1..w_k) whose Gram matrix is the standard form.

    Standard means s_i o w_j = delta_ij with both halves isotropic.  Raises
    if the form restricted to the subspace is degenerate.  The construction
    is deterministic: it consumes the canonical basis in order.
    """
    if s.dim % 2:
        raise ValueError("a symplectically nondegenerate subspace has even dimension")
    vecs = list(s.basis)
    first: list[PhasePoint] = []
    second: list[PhasePoint] = []
    while vecs:
        e = vecs.pop(0)
        idx = next((i for i, v in enumerate(vecs) if symplectic_product(e, v)), None)
        if idx is None:
            raise ValueError("symplectic form is degenerate on this subspace")
        f = vecs.pop(idx)
        f = _modlin.inv_mod(symplectic_product(e, f), s.p) * f
        vecs = [v - symplectic_product(v, f) * e + symplectic_product(v, e) * f for v in vecs]
        first.append(e)
        second.append(f)
    return first + second
