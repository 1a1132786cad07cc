"""Closed-form dimension, codimension, and degree data for secant varieties,
plus the defectivity lookup tables.

Degree products are evaluated with exact big integers; each must divide
exactly, and a fractional result is treated as a bug, not rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .indexing import binomial


def dim_sab(a: int, b: int) -> int:
    """Dimension (a+2)(b+1)(a-b+1)/2 of the two-row module on C^3."""
    if a < b or b < 0:
        raise ValueError("need a >= b >= 0")
    num = (a + 2) * (b + 1) * (a - b + 1)
    return num // 2


def _exact_product(factors) -> int:
    total = Fraction(1)
    for f in factors:
        total *= f
    if total.denominator != 1:
        raise ArithmeticError(f"degree product is not an integer: {total}")
    return total.numerator


def segre_sym(n: int, r: int) -> tuple[int, int]:
    """(codim, degree) of the rank-r locus of symmetric (n+1) x (n+1) matrices.

    codim = C(n-r+2, 2); the degree is the classical product
    prod_{i=0}^{n-r} C(n+1+i, n-r-i+1) / C(2i+1, i).
    """
    if not 1 <= r <= n + 1:
        raise ValueError(f"need 1 <= r <= {n + 1}, got {r}")
    codim = binomial(n - r + 2, 2)
    degree = _exact_product(
        Fraction(binomial(n + 1 + i, n - r - i + 1), binomial(2 * i + 1, i))
        for i in range(n - r + 1)
    )
    return codim, degree


def segre_grass(n: int, r: int) -> tuple[int, int]:
    """(codim, degree) of the r-th secant variety of the Grassmannian of
    2-planes in C^(n+1): codim = C(n-2r+1, 2) and degree
    2^-(n-2r) * prod_{i=0}^{n-2r-1} C(n+1+i, n-2r-i) / C(2i+1, i).
    """
    if r < 1 or n - 2 * r + 1 < 0:
        raise ValueError(f"invalid range (n={n}, r={r})")
    codim = binomial(n - 2 * r + 1, 2)
    factors = [
        Fraction(binomial(n + 1 + i, n - 2 * r - i), binomial(2 * i + 1, i))
        for i in range(n - 2 * r)
    ]
    degree = _exact_product(factors + [Fraction(1, 2 ** (n - 2 * r))])
    return codim, degree


def sym_series_degree(p: int) -> int:
    """Degree of the rank-C(p+1, 2) catalecticant locus for the middle split
    of ternary forms of degree 2p; equals 4, 112, 28314, 81662152 for
    p = 1..4."""
    n = p * (p + 3) // 2
    r = binomial(p + 1, 2)
    return segre_sym(n, r)[1]


def grass_series_degree(p: int) -> int:
    """Degree of the rank-2*C(p+2, 2) Pfaffian locus attached to ternary
    forms of degree 2p+1; equals 4, 140, 65780, 563178924 for p = 1..4."""
    m = (p + 1) * (p + 3)  # ambient dimension of the skew space
    r = binomial(p + 2, 2)
    return segre_grass(m - 1, r)[1]


_KNOWN_SECANT_DEGREES = {
    (2, 4, 3): 112,
    (2, 4, 4): 35,
    (2, 5, 6): 140,
    (2, 6, 6): 28314,
}

# Defective triples (n, d, r): the secant variety misses the expected
# dimension by one (each is a determinantal hypersurface instead of
# filling its ambient space).
_DEFECTIVE = {
    (2, 4, 5),
    (3, 4, 9),
    (4, 4, 14),
    (4, 3, 7),
}

# Weakly defective but not defective.
_WEAKLY_ONLY = {
    (2, 6, 9),
    (3, 4, 8),
}


def known_secant_degree(n: int, d: int, r: int) -> int | None:
    """Published degree of the (n, d, r) secant variety, when tabulated."""
    return _KNOWN_SECANT_DEGREES.get((n, d, r))


@dataclass(frozen=True)
class SecantDimReport:
    n: int
    d: int
    r: int
    expected_dim: int
    actual_dim: int
    defective: bool
    weakly_defective: bool


def secant_dim(n: int, d: int, r: int) -> SecantDimReport:
    """Expected and actual projective dimension of the (n, d, r) secant
    variety, with defectivity flags from the classification tables.

    For d = 2 the actual dimension comes from the symmetric-matrix codim
    formula; the four sporadic defective triples each drop dimension one.
    """
    if n < 1 or d < 1 or r < 1:
        raise ValueError("need positive n, d, r")
    ambient = binomial(n + d, d) - 1
    expected = min(r * (n + 1) - 1, ambient)
    if d == 2:
        if r <= n + 1:
            codim, _ = segre_sym(n, r)
            actual = ambient - codim
        else:
            actual = ambient
        weakly = 2 <= r <= binomial(n + 2, 2)
        return SecantDimReport(
            n, d, r, expected, actual, actual < expected, weakly or actual < expected
        )
    if (n, d, r) in _DEFECTIVE:
        return SecantDimReport(n, d, r, expected, expected - 1, True, True)
    weakly = (n, d, r) in _WEAKLY_ONLY
    return SecantDimReport(n, d, r, expected, expected, False, weakly)
