"""Named invariants and packaged border-rank certificates.

``strategy`` transcribes, per (n, d, r), which exact rank tests are the
strongest known for the r-th secant variety (catalecticant minors,
sub-Pfaffian thresholds, the determinantal sextic hypersurface, the
Aronhold quartic) together with how much the tests cut out (ideal,
scheme, irreducible component).  ``certify`` runs them; a rank above its
threshold is a mathematical proof that the form lies outside the secant
variety, while a consistent report is never a membership proof.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .flattenings import cat_border_rank_lb, cat_matrix
from .forms import HomogForm, fraction_to_str, to_polynomial_json
from .indexing import binomial
from .youngflat import (
    symmetric_twisted_flattening,
    yf_border_rank_lb,
    young_flattening,
)

REDUCIBLE_CAVEAT = (
    "rank locus may be reducible; consistency only places the form on some "
    "component, not necessarily the secant variety"
)

# Aronhold invariant: Pfaffian of the principal 8x8 submatrix of the 9x9
# Young flattening of a ternary cubic obtained by dropping this row and
# column.  All nine principal 8-Pfaffians agree up to scale; index 8 was
# checked at build time to give a nonzero polynomial.
ARONHOLD_DELETED_INDEX = 8


def aronhold(form: HomogForm) -> Fraction:
    """Degree-4 invariant cutting out the rank-3 locus of ternary cubics."""
    if form.nvars != 3 or form.degree != 3:
        raise ValueError("Aronhold invariant needs a ternary cubic")
    m = young_flattening(form).matrix
    keep = [i for i in range(9) if i != ARONHOLD_DELETED_INDEX]
    return m.principal_submatrix(keep).pfaffian()


def aronhold_rank_test(form: HomogForm) -> bool:
    """True when the cubic's Young flattening has rank at most 6 (the
    closed condition equivalent to lying on the Aronhold hypersurface)."""
    if form.nvars != 3 or form.degree != 3:
        raise ValueError("Aronhold rank test needs a ternary cubic")
    return young_flattening(form).matrix.rank() <= 6


def sextic_det33(form: HomogForm) -> Fraction:
    """Determinant of the middle 10x10 catalecticant of a ternary sextic;
    its vanishing is the degree-10 equation of the rank-9 locus."""
    if form.nvars != 3 or form.degree != 6:
        raise ValueError("this determinant needs a ternary sextic")
    return cat_matrix(form, 3).determinant()


@dataclass(frozen=True)
class RankTest:
    """One exact rank test: EXCLUDED when rank exceeds the threshold."""

    kind: str  # "cat" | "yf" | "twisted"
    label: str
    threshold: int
    a: int | None = None  # catalecticant split, when kind == "cat"
    invariant: str | None = None  # "aronhold" | "det33" reported alongside


@dataclass(frozen=True)
class StrategyRow:
    n: int
    d: int
    r: int
    tests: tuple[RankTest, ...]
    status: str  # "ideal" | "scheme" | "irreducible-component" | "set"
    source: str
    notes: tuple[str, ...] = ()
    known_sharp: bool = True


def _cat_test(a: int, d: int, r: int, size_word: str = "minors") -> RankTest:
    return RankTest(
        kind="cat",
        label=f"size {r + 1} {size_word} of the ({a},{d - a}) catalecticant",
        threshold=r,
        a=a,
    )


def strategy(n: int, d: int, r: int) -> StrategyRow:
    """Best known equation set for the (n, d, r) secant variety.

    Cases not covered by a special row fall back to the generic pair:
    the middle catalecticant with threshold r and the Young flattening
    with threshold C(n, floor(n/2)) * r.
    """
    if n < 1 or d < 2 or r < 1:
        raise ValueError("need n >= 1, d >= 2, r >= 1")
    delta = d // 2
    a_mid = delta
    yf_unit = binomial(n, n // 2)

    if d == 2:
        return StrategyRow(
            n, d, r, (_cat_test(1, 2, r),), "ideal", "symmetric matrices"
        )
    if n == 1:
        if r <= d // 2:
            return StrategyRow(
                n, d, r, (_cat_test(a_mid, d, r),), "ideal", "binary forms"
            )
        return StrategyRow(
            n, d, r, (), "ideal", "binary forms",
            notes=("secant variety fills the ambient space",),
        )
    if r == 2:
        return StrategyRow(
            n, d, r,
            (_cat_test(1, d, 2), _cat_test(2, d, 2)),
            "ideal", "second secant",
        )
    if d == 3 and r == 3:
        if n == 2:
            return StrategyRow(
                n, d, r,
                (RankTest("yf", "size 8 sub-Pfaffians of the Young flattening "
                                "(Aronhold quartic)", 6, invariant="aronhold"),),
                "ideal", "Aronhold hypersurface",
            )
        return StrategyRow(
            n, d, r,
            (_cat_test(1, d, 3),),
            "ideal", "third secant of cubics",
            notes=("full ideal also needs the inherited Aronhold equations",),
        )
    if n == 2 and d == 5 and r <= 6:
        status = "scheme" if r == 6 else "irreducible-component"
        notes = () if r == 6 else (REDUCIBLE_CAVEAT,)
        return StrategyRow(
            n, d, r,
            (RankTest("yf", f"size {2 * r + 2} sub-Pfaffians of the quintic "
                            "Young flattening", 2 * r),),
            status, "quintic sub-Pfaffians", notes=notes,
        )
    if n == 2 and d == 6 and r in (7, 8):
        return StrategyRow(
            n, d, r,
            (
                _cat_test(3, 6, r),
                RankTest(
                    "twisted",
                    f"size {3 * r + 1} minors of the symmetric twisted flattening",
                    3 * r,
                ),
            ),
            "irreducible-component", "sextic Young flattenings",
            notes=(REDUCIBLE_CAVEAT,),
        )
    if n == 2 and d == 6 and r == 9:
        return StrategyRow(
            n, d, r,
            (RankTest("cat", "determinant of the (3,3) catalecticant", 9, a=3,
                      invariant="det33"),),
            "ideal", "determinantal hypersurface",
        )
    if n == 2 and d == 7 and r <= 10:
        return StrategyRow(
            n, d, r,
            (RankTest("yf", f"size {2 * r + 2} sub-Pfaffians of the septic "
                            "Young flattening", 2 * r),),
            "irreducible-component", "septic sub-Pfaffians",
            notes=(REDUCIBLE_CAVEAT,),
        )
    if r == 3 and d >= 4:
        return StrategyRow(
            n, d, r,
            (_cat_test(1, d, 3), _cat_test(a_mid, d, 3)),
            "scheme", "third secant",
        )
    if n == 2 and r in (4, 5, 6) and (d >= 6 or (d == 4 and r in (4, 5))):
        return StrategyRow(
            n, d, r,
            (_cat_test(a_mid, d, r),),
            "scheme", "middle catalecticant",
        )
    if n == 2:
        window = binomial(delta + 1, 2) + (1 if d % 2 else 0)
        if r <= window:
            tests = tuple(
                RankTest(
                    "cat",
                    f"rank of the ({a},{d - a}) catalecticant equals "
                    f"min(r, {binomial(a + 2, 2)})",
                    min(r, binomial(a + 2, 2)),
                    a=a,
                )
                for a in range(1, delta + 1)
            )
            return StrategyRow(
                n, d, r, tests, "scheme", "rank-profile membership window",
                notes=("open conditions (exact ranks) also required for membership",),
            )
    known_sharp = not (n == 2 and (d, r) in ((7, 11), (9, 17), (9, 18)))
    tests = [_cat_test(a_mid, d, r)]
    if d % 2 == 1 and r * yf_unit < binomial((d - 1) // 2 + n, n) * binomial(n + 1, n // 2):
        tests.append(
            RankTest("yf", f"size {yf_unit * r + 1} minors of the Young flattening",
                     yf_unit * r)
        )
    if d % 2 == 1 and r <= binomial((d - 1) // 2 + n, n):
        status = "irreducible-component"
        notes: tuple[str, ...] = (REDUCIBLE_CAVEAT,)
    elif d % 2 == 0 and r <= binomial(d // 2 + n - 1, n):
        status = "irreducible-component"
        notes = (REDUCIBLE_CAVEAT,)
    else:
        status = "set"
        notes = ()
    if not known_sharp:
        notes = notes + ("NOT-KNOWN-SHARP: no stronger equations are known",)
    return StrategyRow(
        n, d, r, tuple(tests), status, "generic flattening pair",
        notes=notes, known_sharp=known_sharp,
    )


@dataclass(frozen=True)
class TestResult:
    label: str
    kind: str
    shape: tuple[int, int]
    rank: int
    threshold: int
    excluded: bool
    invariant_name: str | None = None
    invariant_value: Fraction | None = None


@dataclass(frozen=True)
class CertificateReport:
    digest: str
    n: int
    d: int
    r: int
    status: str
    source: str
    notes: tuple[str, ...]
    results: tuple[TestResult, ...]
    excluded: bool
    border_rank_lb: int

    @property
    def verdict(self) -> str:
        return "EXCLUDED" if self.excluded else "CONSISTENT"

    def to_json(self) -> dict:
        return {
            "input_digest": self.digest,
            "n": self.n,
            "degree": self.d,
            "r": self.r,
            "verdict": self.verdict,
            "cuts_out": self.status,
            "source": self.source,
            "notes": list(self.notes),
            "certified_border_rank_lower_bound": self.border_rank_lb,
            "consistent_is_not_membership_proof": True,
            "tests": [
                {
                    "label": t.label,
                    "kind": t.kind,
                    "matrix_shape": list(t.shape),
                    "rank": t.rank,
                    "threshold": t.threshold,
                    "verdict": "EXCLUDED" if t.excluded else "CONSISTENT",
                    **(
                        {t.invariant_name: fraction_to_str(t.invariant_value)}
                        if t.invariant_name is not None
                        else {}
                    ),
                }
                for t in self.results
            ],
        }


def _form_digest(form: HomogForm) -> str:
    payload = json.dumps(to_polynomial_json(form, "tensor"), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _run_test(form: HomogForm, test: RankTest) -> TestResult:
    inv_name = None
    inv_value = None
    if test.kind == "cat":
        m = cat_matrix(form, test.a)
        if test.invariant == "det33":
            inv_name, inv_value = "det33", sextic_det33(form)
    elif test.kind == "yf":
        m = young_flattening(form).matrix
        if test.invariant == "aronhold":
            inv_name, inv_value = "aronhold", aronhold(form)
    elif test.kind == "twisted":
        p = (form.degree - 2) // 2
        m = symmetric_twisted_flattening(form, p)
    else:
        raise ValueError(f"unknown test kind {test.kind!r}")
    rank = m.rank()
    return TestResult(
        label=test.label,
        kind=test.kind,
        shape=m.shape,
        rank=rank,
        threshold=test.threshold,
        excluded=rank > test.threshold,
        invariant_name=inv_name,
        invariant_value=inv_value,
    )


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("WARING_THREADS", "1")))
    except ValueError:
        return 1


def certify(form: HomogForm, r: int) -> CertificateReport:
    """Run the strategy tests for (n, d, r) on the form.

    EXCLUDED means some exact rank exceeded its threshold, which certifies
    that the form has border rank > r.  The report also carries the best
    certified lower bound from the catalecticant and Young flattening
    ranks.  Tests are independent and may run concurrently (capped by
    WARING_THREADS); the report order always follows the strategy row.
    """
    n = form.nvars - 1
    row = strategy(n, form.degree, r)
    threads = _thread_cap()
    if threads > 1 and len(row.tests) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = tuple(pool.map(lambda t: _run_test(form, t), row.tests))
    else:
        results = tuple(_run_test(form, t) for t in row.tests)
    lb = cat_border_rank_lb(form)
    if n == 2 or (n % 2 == 0 and form.degree % 2 == 1):
        lb = max(lb, yf_border_rank_lb(form))
    return CertificateReport(
        digest=_form_digest(form),
        n=n,
        d=form.degree,
        r=r,
        status=row.status,
        source=row.source,
        notes=row.notes,
        results=results,
        excluded=any(t.excluded for t in results),
        border_rank_lb=lb,
    )
