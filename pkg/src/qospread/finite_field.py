"""Exact arithmetic in Z_p and its extension fields GF(p^k), p an odd prime.

An element of GF(p^k) is stored as its coordinate vector (a_0, ..., a_{k-1})
over the power basis {1, t, ..., t^{k-1}}, where t is a root of a monic
irreducible polynomial

    f(x) = c_0 + c_1 x + ... + c_{k-1} x^{k-1} + x^k

over Z_p.  A ``FieldSpec`` pins down (p, k, f) and every ``GFElement``
carries its ``FieldSpec``, so cross-field arithmetic fails loudly instead
of being silently reduced.  k = 1 degenerates to Z_p itself (f(x) = x, trace =
identity), which lets prime-field and extension-field callers share one
code path.

Reproducibility conventions, relied on by the on-disk family format:

* ``FieldSpec.elements`` enumerates in base-p counting order with a_0 as the
  least significant digit: 0, 1, ..., p-1, t, 1+t, ...
* ``find_irreducible`` returns the first monic irreducible polynomial in
  that coefficient order (c_0 varies fastest).
* ``find_nonresidue`` returns the first non-square in enumeration order.

Characteristic 2 is rejected everywhere: the subspace constructions built on
top of this module need both 2^{-1} mod p and a quadratic non-residue.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _modlin


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_odd_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p) or p < 3:
        raise ValueError(f"p must be an odd prime >= 3, got {p!r}")


def _digits(i: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        i, r = divmod(i, p)
        out.append(r)
    return out


def _poly_mod(f: list[int], g: list[int], p: int) -> list[int]:
    """Remainder of f by the monic polynomial g, coefficients low-to-high."""
    r = [x % p for x in f]
    while len(r) >= len(g):
        if r[-1] == 0:
            r.pop()
            continue
        c = r[-1]
        shift = len(r) - len(g)
        for i, gi in enumerate(g):
            r[shift + i] = (r[shift + i] - c * gi) % p
        r.pop()
    return r


def _is_irreducible(low_coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division: no monic factor of degree 1..k//2 divides f."""
    k = len(low_coeffs)
    if k == 1:
        return True
    f = list(low_coeffs) + [1]
    for d in range(1, k // 2 + 1):
        for idx in range(p**d):
            g = _digits(idx, p, d) + [1]
            if not any(_poly_mod(f, g, p)):
                return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible degree-k polynomial over Z_p.

    Candidates are scanned in base-p counting order of the low coefficients
    (c_0 fastest); the returned tuple is (c_0, ..., c_{k-1}), the monic x^k
    term being implicit.  For k = 1 this is f(x) = x, i.e. (0,).
    """
    require_odd_prime(p)
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        return (0,)
    for idx in range(p**k):
        cand = tuple(_digits(idx, p, k))
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^k) presented as Z_p[x]/(f) with f monic irreducible.

    ``poly`` holds the k low coefficients (c_0, ..., c_{k-1}) of f; an empty
    tuple is accepted for k = 1 and normalised to (0,), meaning f(x) = x.
    """

    p: int
    k: int = 1
    poly: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        require_odd_prime(self.p)
        if self.k < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.k}")
        poly = tuple(int(c) % self.p for c in self.poly)
        if not poly and self.k == 1:
            poly = (0,)
        if len(poly) != self.k:
            raise ValueError(f"need {self.k} low coefficients, got {len(poly)}")
        if not _is_irreducible(poly, self.p):
            raise ValueError(f"x^{self.k} + {list(poly)} is reducible over Z_{self.p}")
        object.__setattr__(self, "poly", poly)

    @property
    def size(self) -> int:
        return self.p**self.k

    def element(self, coords) -> "GFElement":
        return GFElement(self, tuple(int(c) % self.p for c in coords))

    def zero(self) -> "GFElement":
        return GFElement(self, (0,) * self.k)

    def one(self) -> "GFElement":
        return self.scalar(1)

    def scalar(self, n: int) -> "GFElement":
        """The image of the integer n in the prime subfield."""
        return GFElement(self, (n % self.p,) + (0,) * (self.k - 1))

    def from_index(self, i: int) -> "GFElement":
        """The i-th element in enumeration order (base-p digits of i)."""
        if not 0 <= i < self.size:
            raise ValueError(f"index {i} out of range for a field of size {self.size}")
        return GFElement(self, tuple(_digits(i, self.p, self.k)))

    def elements(self):
        for i in range(self.size):
            yield self.from_index(i)

    def power_basis(self) -> list["GFElement"]:
        """The basis {1, t, ..., t^{k-1}}; t^i has unit coordinate vector e_i."""
        return [self.element(tuple(1 if j == i else 0 for j in range(self.k))) for i in range(self.k)]

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}), f={list(self.poly)}+x^{self.k}"


def gf(p: int, k: int = 1, poly=None) -> FieldSpec:
    """GF(p^k) with the default (first-in-scan-order) irreducible polynomial."""
    return FieldSpec(p, k, tuple(poly) if poly is not None else find_irreducible(p, k))


def _mul_coords(field: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    p, k = field.p, field.k
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce with x^k = -(c_0 + ... + c_{k-1} x^{k-1})
    for d in range(2 * k - 2, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j, fj in enumerate(field.poly):
                prod[d - k + j] = (prod[d - k + j] - c * fj) % p
    return tuple(prod[:k])


@dataclass(frozen=True)
class GFElement:
    """An element of GF(p^k) in power-basis coordinates."""

    field: FieldSpec
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.field.k:
            raise ValueError(f"expected {self.field.k} coordinates, got {len(self.coords)}")

    def _coerce(self, other) -> "GFElement":
        if isinstance(other, GFElement):
            if other.field != self.field:
                raise ValueError(f"mixed fields: {self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return GFElement(self.field, tuple((x + y) % p for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return GFElement(self.field, tuple((x - y) % p for x, y in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        p = self.field.p
        return GFElement(self.field, tuple((-x) % p for x in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.field, _mul_coords(self.field, self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GFElement":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "GFElement":
        if self.is_zero:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self ** (self.field.size - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __str__(self) -> str:
        return format_element(self)


def gf_mul(a: GFElement, b: GFElement) -> GFElement:
    """Exact product in GF(p^k); rejects mixed-field inputs."""
    return a * b


def gf_inv(a: GFElement) -> GFElement:
    """Multiplicative inverse; raises ZeroDivisionError on 0."""
    return a.inverse()


def field_trace(a: GFElement) -> int:
    """The trace Tr(a) = a + a^p + ... + a^{p^{k-1}}, a value in Z_p.

    Tr is Z_p-linear and (x, y) -> Tr(xy) is a non-degenerate bilinear form;
    for k = 1 it is the identity on Z_p.
    """
    acc = a
    frob = a
    for _ in range(a.field.k - 1):
        frob = frob**a.field.p
        acc = acc + frob
    if any(acc.coords[1:]):
        raise AssertionError(f"trace landed outside the prime subfield: {acc.coords}")
    return acc.coords[0]


def trace_dual_basis(basis: list[GFElement]) -> list[GFElement]:
    """The basis {f_j} with Tr(e_i * f_j) = delta_ij for the given {e_i}.

    Solves the k x k linear system over Z_p; rejects linearly dependent input.
    """
    if not basis:
        raise ValueError("empty basis")
    field = basis[0].field
    if len(basis) != field.k or any(e.field != field for e in basis):
        raise ValueError(f"need {field.k} elements of {field}")
    powers = field.power_basis()
    mat = [[field_trace(e * tp) for tp in powers] for e in basis]
    inv = _modlin.inverse(mat, field.p)
    if inv is None:
        raise ValueError("input elements are linearly dependent over Z_p")
    k = field.k
    return [field.element(tuple(inv[c][j] for c in range(k))) for j in range(k)]


def find_nonresidue(field: FieldSpec) -> GFElement:
    """First element D != 0 in enumeration order with D != x^2 for all x.

    Exactly half the nonzero elements are squares when p >= 3, so the scan
    always terminates.
    """
    squares = {(x * x).coords for x in field.elements()}
    for x in field.elements():
        if not x.is_zero and x.coords not in squares:
            return x
    raise AssertionError("unreachable for p >= 3")


def format_element(a: GFElement) -> str:
    """Deterministic text form: a polynomial in t, e.g. '0', '2', '1+t', '2t^2'."""
    parts = []
    for i, c in enumerate(a.coords):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            var = "t" if i == 1 else f"t^{i}"
            parts.append(var if c == 1 else f"{c}{var}")
    return "+".join(parts) or "0"
