"""Builders for the quasi-orthogonal subalgebra families.

Every family member is a subspace of phase space; the subalgebra it stands
for is the complex span of the Weyl monomials over that subspace.  Three
layers of construction live here:

* the two-block spread of p^{2k}+1 matrix-algebra members in M_{p^{2k}},
  assembled from the two-parameter C family (nonzero first parameter), the
  one-parameter D family and the D-infinity block;
* a Lagrangian (masa) spread of p^{2k}+1 isotropic members of the same
  ambient, built from the lines {(x, mx)} of GF(p^{2k})^2 pushed down to
  Z_p coordinates — each member spans a maximal abelian subalgebra;
* the recursive construction: given the maximal family on n-2 blocks and
  the masa spread on 2 blocks, it emits left members padded with identity,
  the two-block spread on the right padded with identity, and for every
  (left member, masa, (a, b) != (0, 0)) one mixed member threaded through a
  symplectic frame of the left member — reaching the dimension bound
  (p^{2kn}-1)/(p^{2k}-1) members in M_{p^{kn}}.

All builders are deterministic: field elements enumerate in base-p counting
order, labels encode the construction path, and subspaces canonicalise, so
identical parameters reproduce identical families byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace

from .finite_field import FieldSpec, GFElement, find_nonresidue, format_element, gf
from .phase_space import (
    GFPhasePoint,
    PhasePoint,
    Subspace,
    concat,
    dual_coords,
    pi1,
    symplectic_basis,
    symplectic_product,
)

MATRIX_ALGEBRA = "matrix_algebra"
MASA = "masa"

MAX_MEMBERS = 100_000


class _Infinity:
    """Sentinel for the infinity member of a projective family."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"


INFINITY = _Infinity()


@dataclass(frozen=True)
class ConstructionParams:
    """Shared construction inputs: the field GF(p^k), the block count n and
    a fixed quadratic non-residue."""

    field: FieldSpec
    n: int
    nonresidue: GFElement

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.nonresidue.field != self.field:
            raise ValueError("non-residue comes from a different field")
        if self.nonresidue.is_zero:
            raise ValueError("non-residue must be nonzero")
        for x in self.field.elements():
            if (x * x) == self.nonresidue:
                raise ValueError(f"{format_element(self.nonresidue)} is a square, not a non-residue")

    @classmethod
    def create(cls, p: int, k: int = 1, n: int = 2, poly=None, nonresidue=None) -> "ConstructionParams":
        fld = gf(p, k, poly)
        d = fld.element(nonresidue) if nonresidue is not None else find_nonresidue(fld)
        return cls(fld, n, d)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def k(self) -> int:
        return self.field.k

    @property
    def ambient_factors(self) -> int:
        return self.k * self.n


@dataclass(frozen=True)
class FamilyMember:
    label: str
    kind: str  # MATRIX_ALGEBRA or MASA
    subspace: Subspace


@dataclass
class SpreadFamily:
    """A labeled family of subspaces with its construction parameters.

    ``complete`` records whether the family claims the maximal member count
    (p^{2kn}-1)/(p^{2k}-1); builders always produce complete families, while
    hand-assembled test families may opt out.
    """

    params: ConstructionParams
    members: list[FamilyMember] = dc_field(default_factory=list)
    complete: bool = True

    def __post_init__(self) -> None:
        labels = [m.label for m in self.members]
        if len(set(labels)) != len(labels):
            raise ValueError("member labels must be unique")

    def subspaces(self) -> list[Subspace]:
        return [m.subspace for m in self.members]

    def labels(self) -> list[str]:
        return [m.label for m in self.members]


def _gf_subspace(field: FieldSpec, generators: list[GFPhasePoint]) -> Subspace:
    """Z_p subspace spanned by all field multiples of the generators.

    The GF(p^k)-span of g is Z_p-spanned by {t^i g}, so each generator
    contributes k rows, pushed through the coordinate map.
    """
    rows = [pi1(g.scale(tp)) for g in generators for tp in field.power_basis()]
    return Subspace.from_generators(field.p, 2 * field.k, rows)


def build_C(a, b, params: ConstructionParams) -> Subspace:
    """The C family: span of (1, b, 0, a) and (0, a, -1, bD) over the field.

    ``a`` may be the INFINITY sentinel (``b`` then None), giving the span of
    (0,1,0,0) and (0,0,0,1).  Members with a != 0 are symplectically
    nondegenerate; a = 0 gives isotropic (commutative) members.
    """
    fld = params.field
    one, zero = fld.one(), fld.zero()
    if a is INFINITY:
        if b is not None and b is not INFINITY:
            raise ValueError("the infinity member takes no second parameter")
        g1 = GFPhasePoint((zero, one, zero, zero))
        g2 = GFPhasePoint((zero, zero, zero, one))
    else:
        g1 = GFPhasePoint((one, b, zero, a))
        g2 = GFPhasePoint((zero, a, -one, b * params.nonresidue))
    return _gf_subspace(fld, [g1, g2])


def build_D(a, params: ConstructionParams) -> Subspace:
    """The D family: span of (1, 1, -a, aD) and (1, 2, -a, 2aD).

    ``a`` may be the INFINITY sentinel, giving the span of (0,0,1,0) and
    (0,0,0,1).  Every member is nondegenerate: the generators pair to
    1 - a^2 D, nonzero because D is a non-residue.
    """
    fld = params.field
    one, zero = fld.one(), fld.zero()
    if a is INFINITY:
        g1 = GFPhasePoint((zero, zero, one, zero))
        g2 = GFPhasePoint((zero, zero, zero, one))
    else:
        ad = a * params.nonresidue
        g1 = GFPhasePoint((one, one, -a, ad))
        g2 = GFPhasePoint((one, fld.scalar(2), -a, 2 * ad))
    return _gf_subspace(fld, [g1, g2])


def build_spread_2(params: ConstructionParams) -> SpreadFamily:
    """The p^{2k}+1 pairwise quasi-orthogonal matrix-algebra members of two
    blocks: {C[a,b] : a != 0} + {D[a] : all a} + D[inf]."""
    if params.n != 2:
        raise ValueError(f"the two-block spread needs n = 2, got n = {params.n}")
    members = []
    for a in params.field.elements():
        if a.is_zero:
            continue
        for b in params.field.elements():
            label = f"C[{format_element(a)},{format_element(b)}]"
            members.append(FamilyMember(label, MATRIX_ALGEBRA, build_C(a, b, params)))
    for a in params.field.elements():
        members.append(FamilyMember(f"D[{format_element(a)}]", MATRIX_ALGEBRA, build_D(a, params)))
    members.append(FamilyMember("D[inf]", MATRIX_ALGEBRA, build_D(INFINITY, params)))
    return SpreadFamily(params, members)


def build_masa_spread(params: ConstructionParams) -> SpreadFamily:
    """p^{2k}+1 isotropic members partitioning the two-block ambient.

    Realised as the lines {(x, mx)} of GF(p^{2k})^2 plus {(0, y)}: the first
    slot expands over the big field's power basis into shift exponents, the
    second over its trace-dual basis into clock exponents, so the symplectic
    product of two image points is Tr(x y') - Tr(x' y), which vanishes on
    every line.  The m = 0 line is the pure-shift member and the infinity
    line the pure-clock member (clock operators only, one per factor).
    """
    if params.n != 2:
        raise ValueError(f"the masa spread needs n = 2, got n = {params.n}")
    p, k = params.p, params.k
    big = gf(p, 2 * k)

    def line_point(x: GFElement, y: GFElement) -> PhasePoint:
        shifts = x.coords
        clocks = dual_coords(y)
        coords: list[int] = []
        for i in range(2 * k):
            coords += (shifts[i], clocks[i])
        return PhasePoint(p, 2 * k, tuple(coords))

    basis = big.power_basis()
    members = []
    for slope in big.elements():
        rows = [line_point(e, slope * e) for e in basis]
        sub = Subspace.from_generators(p, 2 * k, rows)
        members.append(FamilyMember(f"M[{format_element(slope)}]", MASA, sub))
    rows = [line_point(big.zero(), e) for e in basis]
    members.append(FamilyMember("M[inf]", MASA, Subspace.from_generators(p, 2 * k, rows)))
    return SpreadFamily(params, members)


def _standard_gram_ok(basis: list[PhasePoint]) -> bool:
    k = len(basis) // 2
    p = basis[0].p
    for i in range(2 * k):
        for j in range(2 * k):
            want = 0
            if j == i + k:
                want = 1
            elif i == j + k:
                want = p - 1
            if symplectic_product(basis[i], basis[j]) != want:
                return False
    return True


def embed_hat(a, b, left_basis: list[PhasePoint], right_basis: list[PhasePoint],
              params: ConstructionParams) -> Subspace:
    """One mixed member of the recursion step.

    ``left_basis`` is a normalised symplectic frame (s_1..s_k, w_1..w_k) of
    a nondegenerate 2k-dim subspace of the left ambient; ``right_basis``
    spans an isotropic 2k-dim subspace of the right ambient.  The member is
    the image of the span of (1, 0, a, b) and (0, 1, bD, a) over the field,
    with first/second coordinates threaded along the left frame and
    third/fourth along the right basis.  (0, 0) reproduces left tensor
    identity; the INFINITY sentinel reproduces identity tensor right.
    """
    fld = params.field
    k = fld.k
    if len(left_basis) != 2 * k or len(right_basis) != 2 * k:
        raise ValueError(f"bases must have 2k = {2 * k} vectors")
    if not _standard_gram_ok(left_basis):
        raise ValueError("left basis is not a normalised symplectic frame")
    if any(symplectic_product(u, v) for u in right_basis for v in right_basis):
        raise ValueError("right basis does not span an isotropic subspace")
    m_left = left_basis[0].m
    m_right = right_basis[0].m
    p = params.p

    def embed(w: GFPhasePoint) -> PhasePoint:
        c1, c2, c3, c4 = w.coords
        alpha, gamma = c1.coords, c3.coords
        beta, delta = dual_coords(c2), dual_coords(c4)
        left = PhasePoint.zero(p, m_left)
        for i in range(k):
            if alpha[i]:
                left = left + alpha[i] * left_basis[i]
            if beta[i]:
                left = left + beta[i] * left_basis[k + i]
        right = PhasePoint.zero(p, m_right)
        for i in range(k):
            if gamma[i]:
                right = right + gamma[i] * right_basis[i]
            if delta[i]:
                right = right + delta[i] * right_basis[k + i]
        return concat(left, right)

    one, zero = fld.one(), fld.zero()
    if a is INFINITY:
        g1 = GFPhasePoint((zero, zero, one, zero))
        g2 = GFPhasePoint((zero, zero, zero, one))
    else:
        g1 = GFPhasePoint((one, zero, a, b))
        g2 = GFPhasePoint((zero, one, b * params.nonresidue, a))
    rows = [embed(g.scale(tp)) for g in (g1, g2) for tp in fld.power_basis()]
    return Subspace.from_generators(p, m_left + m_right, rows)


def _pad(sub: Subspace, before: int, after: int) -> Subspace:
    """The same span inside a wider ambient, zero on the added factors."""
    rows = [(0,) * (2 * before) + pt.coords + (0,) * (2 * after) for pt in sub.basis]
    return Subspace.from_generators(sub.p, before + sub.m + after, rows)


def _full_block(params: ConstructionParams) -> Subspace:
    m = params.k
    rows = [tuple(1 if j == i else 0 for j in range(2 * m)) for i in range(2 * m)]
    return Subspace.from_generators(params.p, m, rows)


def build_recursive(params: ConstructionParams, max_members: int = MAX_MEMBERS) -> SpreadFamily:
    """The maximal family of (p^{2kn}-1)/(p^{2k}-1) members in M_{p^{kn}}.

    n = 1 is the single full block and n = 2 the two-block spread; larger n
    recurses on the leading n-2 blocks and splices the trailing two blocks in
    through the masa spread.
    """
    p, k, n = params.p, params.k, params.n
    expected = (p ** (2 * k * n) - 1) // (p ** (2 * k) - 1)
    if expected > max_members:
        raise ValueError(f"family would have {expected} members, above the budget {max_members}")
    if n == 1:
        return SpreadFamily(params, [FamilyMember("full", MATRIX_ALGEBRA, _full_block(params))])
    if n == 2:
        return build_spread_2(params)

    two_block = replace(params, n=2)
    left = build_recursive(replace(params, n=n - 2), max_members)
    masas = build_masa_spread(two_block)
    right = build_spread_2(two_block)
    m_left = k * (n - 2)
    m_right = 2 * k

    members = []
    for mem in left.members:
        members.append(
            FamilyMember(f"{mem.label}⊗I", MATRIX_ALGEBRA, _pad(mem.subspace, 0, m_right))
        )
    for mem in right.members:
        members.append(
            FamilyMember(f"I⊗{mem.label}", MATRIX_ALGEBRA, _pad(mem.subspace, m_left, 0))
        )
    frames = [symplectic_basis(mem.subspace) for mem in left.members]
    for i, frame in enumerate(frames):
        for j, masa in enumerate(masas.members):
            right_rows = list(masa.subspace.basis)
            for a in params.field.elements():
                for b in params.field.elements():
                    if a.is_zero and b.is_zero:
                        continue
                    label = f"B[A={i}|C={j}|a={format_element(a)},b={format_element(b)}]"
                    sub = embed_hat(a, b, frame, right_rows, params)
                    members.append(FamilyMember(label, MATRIX_ALGEBRA, sub))
    return SpreadFamily(params, members)
