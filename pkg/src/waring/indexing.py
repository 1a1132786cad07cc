"""Shared combinatorial bookkeeping for monomial and wedge indexing.

Degree-d monomials in the variables x0..xn are addressed by sorted index
tuples (i1 <= ... <= id); matrices list those tuples lexicographically,
which coincides with graded lex because all tuples in a block share one
degree.  Wedge factors are addressed by strictly increasing subsets, also
in lex order.  These orders are fixed globally so matrices are
reproducible across runs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb, factorial


@lru_cache(maxsize=None)
def monomial_tuples(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All sorted index tuples of the given degree over 0..nvars-1, lex order."""
    return tuple(combinations_with_replacement(range(nvars), degree))


@lru_cache(maxsize=None)
def monomial_position(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {t: k for k, t in enumerate(monomial_tuples(nvars, degree))}


@lru_cache(maxsize=None)
def subsets(nvars: int, size: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing index subsets of 0..nvars-1, lex order."""
    return tuple(combinations(range(nvars), size))


@lru_cache(maxsize=None)
def subset_position(nvars: int, size: int) -> dict[tuple[int, ...], int]:
    return {s: k for k, s in enumerate(subsets(nvars, size))}


def merge_sorted(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(a + b))


def exponents_of(t: tuple[int, ...], nvars: int) -> tuple[int, ...]:
    e = [0] * nvars
    for i in t:
        e[i] += 1
    return tuple(e)


def tuple_of_exponents(e) -> tuple[int, ...]:
    out: list[int] = []
    for i, k in enumerate(e):
        out.extend([i] * k)
    return tuple(out)


def multinomial(e) -> int:
    """d! / (e0! ... en!) for the exponent vector e of total degree d."""
    n = factorial(sum(e))
    for k in e:
        n //= factorial(k)
    return n


def binomial(n: int, k: int) -> int:
    return comb(n, k)


def sorted_concat_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of the permutation sorting the concatenation (a, b).

    Both inputs must be strictly increasing.  Returns 0 when they share
    an element (the wedge collapses).
    """
    if set(a) & set(b):
        return 0
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return -1 if inversions & 1 else 1


def complement_subset(s: tuple[int, ...], nvars: int) -> tuple[int, ...]:
    inside = set(s)
    return tuple(i for i in range(nvars) if i not in inside)
