"""Clock-and-shift monomials: symbolic products and dense matrix synthesis.

For an odd prime p put lam = exp(2*pi*i/p) and define in M_p the clock
matrix W = diag(1, lam, ..., lam^{p-1}) and the cyclic shift S with
S e_j = e_{j+1 mod p}.  They satisfy S^p = W^p = I and SW = lam^{-1} WS,
and the p^2 products {S^i W^j} form a trace-orthogonal basis of M_p:
Tr((S^i W^j)^* S^k W^l) = p [i=k][j=l].

A monomial over m tensor factors is indexed by a phase point plus a global
scalar lam^e, tracked exactly as an exponent mod p.  Products follow, per
factor,

    (S^k W^l)(S^k' W^l') = lam^{k' l} S^{k+k'} W^{l+l'},

and two monomials commute up to lam^{-(u o v)} where o is the symplectic
product of their points.  Subalgebra spans are phase-independent, so span
synthesis fixes the representative with exponent 0 per point; phases only
matter through products.

Synthesis returns numpy complex128 matrices (about 16 significant digits);
dimensions are guarded because dense Kronecker products grow as p^m.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .phase_space import PhasePoint, Subspace, span_enumerate, symplectic_product

MAX_DIM = 3**6


@dataclass(frozen=True)
class WeylMonomial:
    """A scalar multiple lam^phase_exp of the tensor monomial at ``point``."""

    point: PhasePoint
    phase_exp: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase_exp", self.phase_exp % self.point.p)

    @classmethod
    def identity(cls, p: int, m: int) -> "WeylMonomial":
        return cls(PhasePoint.zero(p, m))

    @property
    def is_identity(self) -> bool:
        return self.point.is_zero and self.phase_exp == 0


def weyl_mul(x: WeylMonomial, y: WeylMonomial) -> WeylMonomial:
    """Exact product: points add, phases pick up the per-factor cross terms."""
    u, v = x.point, y.point
    u._check(v)
    cross = sum(v.coords[2 * i] * u.coords[2 * i + 1] for i in range(u.m))
    return WeylMonomial(u + v, x.phase_exp + y.phase_exp + cross)


def commutation_phase(u: PhasePoint, v: PhasePoint) -> int:
    """Exponent e with M_u M_v = lam^e M_v M_u; zero iff the monomials commute."""
    return (-symplectic_product(u, v)) % u.p


@lru_cache(maxsize=None)
def _factor_matrix(p: int, k: int, l: int) -> np.ndarray:
    """The p x p matrix S^k W^l: entry (j+k mod p, j) equals lam^{l j}."""
    lam = np.exp(2j * np.pi / p)
    mat = np.zeros((p, p), dtype=complex)
    for j in range(p):
        mat[(j + k) % p, j] = lam ** (l * j)
    mat.flags.writeable = False
    return mat


def synthesize(x: WeylMonomial, max_dim: int = MAX_DIM) -> np.ndarray:
    """Dense complex matrix of the monomial, factor 1 as the leftmost factor."""
    p, m = x.point.p, x.point.m
    if p**m > max_dim:
        raise ValueError(f"dimension {p**m} exceeds the synthesis limit {max_dim}")
    factors = [_factor_matrix(p, x.point.coords[2 * i], x.point.coords[2 * i + 1]) for i in range(m)]
    mat = reduce(np.kron, factors)
    if x.phase_exp:
        mat = np.exp(2j * np.pi * x.phase_exp / p) * mat
    return mat


def basis_matrices(s: Subspace, max_dim: int = MAX_DIM) -> list[np.ndarray]:
    """One matrix per span point (phase 0 each): a trace-orthogonal family.

    The list spans a p^dim(s)-dimensional subspace of the matrices, with the
    identity contributed by the zero point.
    """
    return [synthesize(WeylMonomial(pt), max_dim) for pt in span_enumerate(s)]


def monomial_text(u: PhasePoint) -> str:
    """Human-readable monomial label, e.g. 'SW^2⊗I' or 'I⊗S^2W'."""

    def power(sym: str, e: int) -> str:
        if e == 0:
            return ""
        return sym if e == 1 else f"{sym}^{e}"

    parts = []
    for i in range(u.m):
        k, l = u.coords[2 * i], u.coords[2 * i + 1]
        txt = power("S", k) + power("W", l)
        parts.append(txt or "I")
    return "⊗".join(parts)
