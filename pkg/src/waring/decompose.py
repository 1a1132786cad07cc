"""Waring decomposition: exact kernel extraction plus numeric root isolation.

Binary forms are decomposed through the kernel of a catalecticant; general
ternary quintics of rank seven through the kernel of the Young flattening.
Everything up to and including the polynomial systems is exact; floating
point enters only where roots of univariate polynomials force it, and the
reconstruction residual is always reported honestly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .exactla import ExactMatrix
from .flattenings import cat_matrix, rank_profile
from .forms import HomogForm, LinearForm, from_monomial_coeffs, power_form
from .indexing import (
    exponents_of,
    merge_sorted,
    monomial_position,
    monomial_tuples,
)
from .youngflat import euler_kernel_vectors, young_flattening


class DecompositionError(ValueError):
    """Raised when the input is outside the algorithm's generic regime."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


@dataclass(frozen=True)
class WaringDecomposition:
    """Summands (coefficient, normalized linear form), with the max-norm
    reconstruction residual relative to the input's largest component.
    The exact flag is set only when every root was rational and the
    reconstruction was verified exactly."""

    degree: int
    summands: tuple[tuple[object, tuple[object, ...]], ...]
    residual: float
    exact: bool
    info: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        def scalar(x):
            if isinstance(x, Fraction):
                return str(x)
            if isinstance(x, complex):
                return float(x.real) if abs(x.imag) == 0 else repr(x)
            return float(x)

        return {
            "summands": [
                {"coef": scalar(c), "form": [scalar(v) for v in l]}
                for c, l in self.summands
            ],
            "residual": float(self.residual),
            "exact": bool(self.exact),
        }


# -- small polynomial helpers -------------------------------------------------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _poly_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    return _trim(out)


def _poly_det(entries: list[list[list[Fraction]]]) -> list[Fraction]:
    """Determinant of a small matrix with univariate polynomial entries,
    by column expansion with memoization on the surviving row set."""
    size = len(entries)

    @lru_cache(maxsize=None)
    def minor(rows: frozenset, col: int) -> tuple[Fraction, ...]:
        if col == size:
            return (Fraction(1),)
        total: list[Fraction] = []
        sign = 1
        for r in sorted(rows):
            cell = entries[r][col]
            if cell:
                sub = minor(rows - {r}, col + 1)
                term = _poly_mul(cell, list(sub))
                if sign < 0:
                    term = [-t for t in term]
                total = _poly_add(total, term)
            sign = -sign
        return tuple(total)

    return list(minor(frozenset(range(size)), 0))


def _np_roots(coeffs_desc: list[complex]) -> list[complex]:
    arr = np.array(coeffs_desc, dtype=complex)
    if arr.size <= 1:
        return []
    return [complex(z) for z in np.roots(arr)]


def _projective_distance(u: Sequence[complex], v: Sequence[complex]) -> float:
    a = np.array([complex(x) for x in u])
    b = np.array([complex(x) for x in v])
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 1.0
    dot = abs(np.vdot(a, b))
    cos2 = min(1.0, (dot / (na * nb)) ** 2)
    return float(np.sqrt(max(0.0, 1.0 - cos2)))


def _normalize_point(coords: Sequence, zero_tol: float = 1e-10) -> tuple:
    """Scale so the first (significantly) nonzero coordinate is 1.

    Exact coordinates are normalized exactly; floating-point ones treat
    entries below zero_tol relative to the largest coordinate as zero.
    """
    vals = list(coords)
    if all(isinstance(v, (Fraction, int)) for v in vals):
        lead = next((v for v in vals if v != 0), None)
        if lead is None:
            raise ValueError("zero point")
        return tuple(Fraction(v) / lead for v in vals)
    cvals = [complex(v) for v in vals]
    mag = max(abs(v) for v in cvals)
    if mag == 0:
        raise ValueError("zero point")
    lead = next(v for v in cvals if abs(v) > zero_tol * mag)
    out = []
    for v in cvals:
        w = v / lead
        if abs(w) <= zero_tol:
            w = 0.0
        if isinstance(w, complex) and abs(w.imag) <= zero_tol * (1 + abs(w.real)):
            w = w.real
        out.append(w)
    return tuple(out)


def _sort_key(point: tuple) -> tuple:
    key = []
    for v in point:
        if isinstance(v, Fraction):
            key.append((float(v), 0.0))
        elif isinstance(v, complex):
            key.append((v.real, v.imag))
        else:
            key.append((float(v), 0.0))
    return tuple(key)


def _rational_root_lift(
    poly: Sequence[Fraction], root: complex
) -> Fraction | None:
    """Try to recognize a numeric root as an exact rational root."""
    if abs(root.imag) > 1e-8 * (1 + abs(root.real)):
        return None
    x = float(root.real)
    for bound in (1, 10, 1000, 10**6, 10**9, 10**12):
        cand = Fraction(x).limit_denominator(bound)
        value = Fraction(0)
        for c in reversed(list(poly)):
            value = value * cand + c
        if value == 0:
            return cand
    return None


# -- binary forms ---------------------------------------------------------------------


def decompose_binary(form: HomogForm, r: int, root_tol: float = 1e-8) -> WaringDecomposition:
    """Decompose a binary form as a sum of r d-th powers.

    The kernel of the (r, d-r) catalecticant must be one-dimensional; its
    generator is a degree-r binary form whose roots are the points of the
    decomposition (companion-matrix eigenvalues of the dehomogenization,
    plus the root at infinity when the leading coefficient vanishes).
    Coefficients are then fit on the d+1 component equations.  Rational
    roots are lifted and verified exactly; otherwise the result is
    floating point with its residual.
    """
    if form.nvars != 2:
        raise ValueError("binary decomposition needs exactly 2 variables")
    d = form.degree
    if not 1 <= r <= d - 1:
        raise ValueError(f"need 1 <= r <= {d - 1}")
    m = cat_matrix(form, r)
    rank = m.rank()
    kernel = m.kernel_basis()
    if rank != r or len(kernel) != 1:
        raise DecompositionError(
            f"form not of generic rank {r}: catalecticant rank {rank}, "
            f"kernel dimension {len(kernel)}",
            {"rank": rank, "kernel_dim": len(kernel)},
        )
    # kernel coordinates follow the degree-r tuples (0..0), (0..01), ... so
    # index j is the coefficient of u^(r-j) in the dehomogenized generator
    kappa = list(kernel[0])
    lead_zeros = 0
    for c in kappa:
        if c == 0:
            lead_zeros += 1
        else:
            break
    if lead_zeros >= 2:
        raise DecompositionError(
            "border-rank/rank gap: decomposition as r distinct powers does "
            "not exist (repeated root at infinity)",
            {"kernel": [str(c) for c in kappa]},
        )
    finite = kappa[lead_zeros:]
    roots = _np_roots([complex(c) for c in finite])
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) < root_tol * (1 + abs(roots[i])):
                raise DecompositionError(
                    "border-rank/rank gap: decomposition as r distinct powers "
                    "does not exist (repeated root)",
                    {"roots": [repr(z) for z in roots]},
                )

    exact_roots: list[Fraction] | None = []
    for z in roots:
        lift = _rational_root_lift(list(reversed(finite)), z)
        if lift is None:
            exact_roots = None
            break
        exact_roots.append(lift)

    points: list[tuple] = []
    if lead_zeros == 1:
        points.append((Fraction(1), Fraction(0)) if exact_roots is not None else (1.0, 0.0))
    if exact_roots is not None:
        points.extend(
            _normalize_point((u, Fraction(1))) for u in exact_roots
        )
        return _fit_exact(form, points, d)
    points.extend(_normalize_point((z, 1.0)) for z in roots)
    return _fit_numeric(form, points, d)


def _fit_exact(form: HomogForm, points: list[tuple], d: int) -> WaringDecomposition:
    tuples = monomial_tuples(form.nvars, d)
    cols = []
    for p in points:
        l = power_form(LinearForm(tuple(Fraction(v) for v in p)), d)
        cols.append([l.comps.get(t, Fraction(0)) for t in tuples])
    a = ExactMatrix([[cols[j][i] for j in range(len(points))] for i in range(len(tuples))])
    rhs = form.component_vector()
    sol = a.solve(rhs)
    if sol is None:
        return _fit_numeric(form, points, d)
    recon = a.mat_vec(sol)
    if any(x != y for x, y in zip(recon, rhs)):
        return _fit_numeric(form, points, d)
    summands = sorted(zip(sol, points), key=lambda cl: _sort_key(cl[1]))
    return WaringDecomposition(
        degree=d,
        summands=tuple((c, tuple(p)) for c, p in summands),
        residual=0.0,
        exact=True,
    )


def _fit_numeric(
    form: HomogForm, points: list[tuple], d: int, info: dict | None = None
) -> WaringDecomposition:
    tuples = monomial_tuples(form.nvars, d)
    a = np.zeros((len(tuples), len(points)), dtype=complex)
    for j, p in enumerate(points):
        lp = [complex(v) for v in p]
        for i, t in enumerate(tuples):
            prod = 1.0 + 0j
            for k in t:
                prod *= lp[k]
            a[i, j] = prod
    b = np.array([complex(x) for x in form.component_vector()])
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid_vec = a @ sol - b
    scale = max(1e-300, float(np.max(np.abs(b))))
    residual = float(np.max(np.abs(resid_vec))) / scale
    pairs = sorted(zip(sol.tolist(), points), key=lambda cl: _sort_key(cl[1]))
    cleaned = []
    for c, p in pairs:
        if abs(c.imag) < 1e-12 * (1 + abs(c.real)):
            c = c.real
        cleaned.append((c, tuple(p)))
    return WaringDecomposition(
        degree=d,
        summands=tuple(cleaned),
        residual=residual,
        exact=False,
        info=info or {},
    )


# -- ternary quintics ------------------------------------------------------------------


def _section_quadrics(section: Sequence[Fraction]) -> list[dict]:
    """Split a kernel vector into its three quadric components, stored as
    plain coefficient dictionaries over sorted exponent pairs."""
    pairs = monomial_tuples(3, 2)
    quadrics = []
    for i in range(3):
        q = {}
        for k, beta in enumerate(pairs):
            c = section[i * len(pairs) + k]
            if c:
                q[beta] = c
        quadrics.append(q)
    return quadrics


def _minor_polys(quadrics: list[dict]) -> list[dict]:
    """The three cubic minors x_i q_j - x_j q_i as plain coefficient dicts."""
    minors = []
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        poly: dict[tuple[int, ...], Fraction] = {}
        for beta, c in quadrics[j].items():
            key = merge_sorted(beta, (i,))
            poly[key] = poly.get(key, Fraction(0)) + c
        for beta, c in quadrics[i].items():
            key = merge_sorted(beta, (j,))
            poly[key] = poly.get(key, Fraction(0)) - c
        minors.append({k: v for k, v in poly.items() if v})
    return minors


def _eval_plain(poly: dict, point: Sequence[complex]) -> complex:
    total = 0j
    for t, c in poly.items():
        prod = complex(c)
        for i in t:
            prod *= point[i]
        total += prod
    return total


def _poly_scale_bound(poly: dict) -> float:
    return max((abs(float(c)) for c in poly.values()), default=0.0)


def _restrict_to_chart(poly: dict, chart: int, others: tuple[int, int]) -> dict:
    """Set x_chart = 1; returns {(eu, ev): coeff} over the other two vars."""
    out: dict[tuple[int, int], Fraction] = {}
    u, v = others
    for t, c in poly.items():
        eu = sum(1 for i in t if i == u)
        ev = sum(1 for i in t if i == v)
        key = (eu, ev)
        out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def _eval_bivariate(poly2: dict, u: complex, v: complex) -> complex:
    return sum(complex(c) * u**eu * v**ev for (eu, ev), c in poly2.items())


def _bivariate_partials(poly2: dict) -> tuple[dict, dict]:
    du: dict[tuple[int, int], Fraction] = {}
    dv: dict[tuple[int, int], Fraction] = {}
    for (eu, ev), c in poly2.items():
        if eu:
            du[(eu - 1, ev)] = du.get((eu - 1, ev), Fraction(0)) + eu * c
        if ev:
            dv[(eu, ev - 1)] = dv.get((eu, ev - 1), Fraction(0)) + ev * c
    return du, dv


def _newton_polish(
    f2: dict, g2: dict, u: complex, v: complex, steps: int = 6
) -> tuple[complex, complex]:
    """Newton iteration on the 2x2 chart system; falls back to the input
    point when the Jacobian degenerates."""
    fu, fv = _bivariate_partials(f2)
    gu, gv = _bivariate_partials(g2)
    for _ in range(steps):
        a = _eval_bivariate(fu, u, v)
        b = _eval_bivariate(fv, u, v)
        c = _eval_bivariate(gu, u, v)
        d = _eval_bivariate(gv, u, v)
        det = a * d - b * c
        if abs(det) < 1e-14:
            break
        rf = _eval_bivariate(f2, u, v)
        rg = _eval_bivariate(g2, u, v)
        if abs(rf) + abs(rg) == 0:
            break
        u -= (d * rf - b * rg) / det
        v -= (-c * rf + a * rg) / det
    return u, v


def _by_v_degree(poly2: dict) -> list[list[Fraction]]:
    """Coefficients of v^k as univariate polynomials in u (ascending)."""
    if not poly2:
        return []
    dv = max(ev for _, ev in poly2)
    du = max(eu for eu, _ in poly2)
    rows = [[Fraction(0)] * (du + 1) for _ in range(dv + 1)]
    for (eu, ev), c in poly2.items():
        rows[ev][eu] = c
    return [_trim(row) for row in rows]


def _sylvester_resultant(f_rows: list[list[Fraction]], g_rows: list[list[Fraction]]) -> list[Fraction]:
    """Resultant of two polynomials in v with coefficients in Q[u]."""
    while f_rows and not f_rows[-1]:
        f_rows.pop()
    while g_rows and not g_rows[-1]:
        g_rows.pop()
    m = len(f_rows) - 1
    n = len(g_rows) - 1
    if m < 0 or n < 0:
        return []
    size = m + n
    if size == 0:
        return [Fraction(1)]
    entries: list[list[list[Fraction]]] = [
        [[] for _ in range(size)] for _ in range(size)
    ]
    for row in range(n):
        for k, cell in enumerate(reversed(f_rows)):
            if row + k < size:
                entries[row][row + k] = list(cell)
    for row in range(m):
        for k, cell in enumerate(reversed(g_rows)):
            if row + k < size:
                entries[n + row][row + k] = list(cell)
    return _poly_det(entries)


def _solve_chart(minors: list[dict], chart: int, tol: float) -> tuple[list[tuple], list[tuple]]:
    """Numeric solutions of the minor system on the chart x_chart = 1.

    Returns (filtered points, raw candidates); filtering keeps candidates
    where all three minors vanish within the relative tolerance.
    """
    others = tuple(i for i in range(3) if i != chart)
    f2 = _restrict_to_chart(minors[0], chart, others)
    g2 = _restrict_to_chart(minors[1], chart, others)
    h2 = _restrict_to_chart(minors[2], chart, others)
    pool = [(f2, g2), (f2, h2), (g2, h2)]
    res: list[Fraction] = []
    pair = None
    for cand in pool:
        if cand[0] and cand[1]:
            r = _sylvester_resultant(_by_v_degree(cand[0]), _by_v_degree(cand[1]))
            if r:
                res = r
                pair = cand
                break
    if not res or pair is None:
        return [], []
    u_roots = _np_roots([complex(c) for c in reversed(res)])
    raw: list[tuple] = []
    scales = [max(1.0, _poly_scale_bound(mn)) for mn in minors]
    points: list[tuple] = []
    for ur in u_roots:
        # substitute u and solve the first nonzero restricted minor in v
        coeffs_v = None
        for poly2 in (pair[0], pair[1]):
            rows = _by_v_degree(poly2)
            vals = [
                sum(complex(c) * ur**k for k, c in enumerate(row))
                for row in rows
            ]
            arr = list(reversed(vals))
            top = max((abs(x) for x in arr), default=0.0)
            while arr and abs(arr[0]) < 1e-12 * (1 + top):
                arr.pop(0)
            if len(arr) > 1:
                coeffs_v = arr
                break
        if coeffs_v is None:
            continue
        for vr in _np_roots(coeffs_v):
            uu, vv = _newton_polish(pair[0], pair[1], ur, vr)
            point = [0j, 0j, 0j]
            point[chart] = 1 + 0j
            point[others[0]] = uu
            point[others[1]] = vv
            raw.append(tuple(point))
            mag = max(1.0, max(abs(x) for x in point))
            ok = all(
                abs(_eval_plain(mn, point)) <= tol * s * mag**3
                for mn, s in zip(minors, scales)
            )
            if ok:
                points.append(tuple(point))
    return points, raw


def _solve_line(minors: list[dict], missing: int, tol: float) -> list[tuple]:
    """Solutions with x_missing = 0, parametrized on the remaining line."""
    others = tuple(i for i in range(3) if i != missing)
    scales = [max(1.0, _poly_scale_bound(mn)) for mn in minors]
    out: list[tuple] = []

    def check(point) -> bool:
        mag = max(1.0, max(abs(x) for x in point))
        return all(
            abs(_eval_plain(mn, point)) <= tol * s * mag**3
            for mn, s in zip(minors, scales)
        )

    # points (.., 1, t, ..) along the line
    for poly in minors:
        restricted: dict[int, Fraction] = {}
        for t, c in poly.items():
            if missing in t:
                continue
            ev = sum(1 for i in t if i == others[1])
            restricted[ev] = restricted.get(ev, Fraction(0)) + c
        if len(restricted) > 1 or (restricted and max(restricted) > 0):
            coeffs = [Fraction(0)] * (max(restricted) + 1)
            for k, c in restricted.items():
                coeffs[k] = c
            coeffs = _trim(coeffs)
            deriv = [k * c for k, c in enumerate(coeffs)][1:]
            for z in _np_roots([complex(c) for c in reversed(coeffs)]):
                for _ in range(6):
                    dz = sum(complex(c) * z**k for k, c in enumerate(deriv))
                    if abs(dz) < 1e-14:
                        break
                    z -= sum(complex(c) * z**k for k, c in enumerate(coeffs)) / dz
                point = [0j, 0j, 0j]
                point[others[0]] = 1 + 0j
                point[others[1]] = z
                if check(tuple(point)):
                    out.append(tuple(point))
            break
    point = [0j, 0j, 0j]
    point[others[1]] = 1 + 0j
    if check(tuple(point)):
        out.append(tuple(point))
    return out


def _dedupe(points: list[tuple], tol: float) -> list[tuple]:
    kept: list[tuple] = []
    for p in points:
        if all(_projective_distance(p, q) > tol for q in kept):
            kept.append(p)
    return kept


def decompose_quintic(
    form: HomogForm,
    minor_tol: float = 1e-7,
    point_tol: float = 1e-8,
) -> WaringDecomposition:
    """Decompose a general ternary quintic as a sum of seven fifth powers.

    Steps: build the 18x18 skew Young flattening; require a 4-dimensional
    kernel; quotient by the universal 3-dimensional kernel to extract a
    section of three quadrics (q0, q1, q2); form the cubic minors
    x_i q_j - x_j q_i; solve the system by an exact Sylvester resultant
    followed by numeric root isolation, keeping candidates on which all
    three minors vanish; fit coefficients on the 21 component equations.
    A point survives exactly when (q0, q1, q2) is parallel to it.
    """
    if form.nvars != 3 or form.degree != 5:
        raise ValueError("quintic decomposition needs a ternary quintic")
    yf = young_flattening(form)
    kernel = yf.matrix.kernel_basis()
    if len(kernel) != 4:
        raise DecompositionError(
            f"form not generic of rank 7: kernel dimension {len(kernel)}",
            {
                "kernel_dim": len(kernel),
                "yf_rank": 18 - len(kernel),
                "rank_profile": rank_profile(form),
            },
        )
    euler = euler_kernel_vectors(5)
    ref = ExactMatrix(list(euler))
    rref_rows, pivots = ref.rref()

    def reduce_mod_euler(vec):
        v = [Fraction(x) for x in vec]
        for row, pc in zip(rref_rows, pivots):
            f = v[pc]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    section = None
    for vec in kernel:
        v = reduce_mod_euler(vec)
        if any(v):
            lead = next(x for x in v if x)
            section = [x / lead for x in v]
            break
    if section is None:
        raise DecompositionError(
            "kernel reduced to the universal subspace; no section available",
            {"kernel_dim": len(kernel)},
        )
    quadrics = _section_quadrics(section)
    minors = _minor_polys(quadrics)

    raw_all: list[tuple] = []
    points: list[tuple] = []
    for chart in (2, 0, 1):
        chart_pts, raw = _solve_chart(minors, chart, minor_tol)
        line_pts = _solve_line(minors, chart, minor_tol)
        raw_all = raw + line_pts
        points = _dedupe(chart_pts + line_pts, max(point_tol, 1e-9))
        if len(points) == 7:
            break
    if len(points) != 7:
        raise DecompositionError(
            f"degenerate configuration: {len(points)} candidate points "
            "survived the minor filter (expected 7)",
            {"points": [tuple(map(repr, p)) for p in points],
             "raw": [tuple(map(repr, p)) for p in raw_all]},
        )
    normalized = [_normalize_point(p) for p in points]
    return _fit_numeric(form, normalized, 5, info={"quadrics": quadrics})


def kernel_base_locus_hint(form: HomogForm, a: int) -> list[HomogForm]:
    """Exact kernel of the (a, d-a) catalecticant, returned as degree-a
    forms (the apolar forms of that degree); their common zeros contain
    the points of any length-<=rank decomposition.  No root solving is
    attempted here."""
    m = cat_matrix(form, a)
    tuples = monomial_tuples(form.nvars, a)
    out = []
    for vec in m.kernel_basis():
        terms = [
            (exponents_of(t, form.nvars), c)
            for t, c in zip(tuples, vec)
            if c
        ]
        out.append(from_monomial_coeffs(form.nvars, a, terms))
    return out
