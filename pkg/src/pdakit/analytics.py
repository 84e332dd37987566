"""Exact parameter calculators for the families in this package and
reproduction of the published comparison tables with divergence flags.

Every scheme number here is computed from exact binomials (Python integers
and fractions).  Where a published table printed an approximation or a value
our closed forms contradict, the report carries both: the exact value in the
main columns and the printed one in ``paper_value``, with the column named in
``divergence``.  Printed values are never silently substituted for computed
ones.  Tables whose schemes come from other constructions entirely (II, IV,
VI, used in the source material as comparison baselines) are emitted from
their printed values and flagged ``not-recomputed``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

TABLE_NAMES = ("II", "III", "IV", "V", "VI", "VII", "VIII", "IX")

CSV_HEADER = "label,K,one_minus_MN,F,R,paper_value,divergence"


class ParameterError(ValueError):
    """Closed-form parameters outside their legal range."""


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer; zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def binary_entropy(x) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x) for 0 < x < 1."""
    x = float(x)
    if not 0.0 < x < 1.0:
        raise ParameterError(f"entropy argument must lie in (0, 1), got {x}")
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))


def stirling_binomial_estimate(n: float, k: float) -> float:
    """C(n, k) ~ 2^(n H(k/n)) / sqrt(2 pi k (1 - k/n)).

    The same approximation the published tables use for their subpacketization
    figures; also meaningful at non-integral k, where no exact value exists.
    """
    if not 0 < k < n:
        raise ParameterError(f"need 0 < k < n, got n={n} k={k}")
    ratio = k / n
    return 2.0 ** (n * binary_entropy(ratio)) / math.sqrt(2.0 * math.pi * k * (1.0 - ratio))


@dataclass(frozen=True)
class SchemeRow:
    """One scheme's exact parameters: K users, cache gap 1 - M/N, F, rate R.

    ``F`` is None when the parameter point indexes no integral scheme; in that
    case ``f_estimate`` carries the Stirling figure.
    """

    label: str
    K: Optional[int]
    one_minus_MN: Optional[Fraction]
    F: Optional[int]
    R: Optional[Fraction]
    f_estimate: Optional[float] = None
    note: str = ""


def restricted_family_params(n: int, a: int, b: int, t: int) -> SchemeRow:
    """Closed forms for the restricted same-colors combination of subset colorings.

    K = C(n,a+t) C(a+t,a),  F = C(n,b-t),
    1-M/N = C(n-a-t,b-t)/F,  R = C(n,a+b) C(a+b,b) / F.
    """
    if a < 1 or b < 1 or a + b > n or not 0 <= t < b or a + t > n:
        raise ParameterError(f"bad restricted-family parameters n={n} a={a} b={b} t={t}")
    f_val = binomial(n, b - t)
    return SchemeRow(
        label=f"n={n} a={a} b={b} t={t}",
        K=binomial(n, a + t) * binomial(a + t, a),
        one_minus_MN=Fraction(binomial(n - a - t, b - t), f_val),
        F=f_val,
        R=Fraction(binomial(n, a + b) * binomial(a + b, b), f_val),
    )


def star_intersection_params(
    n: int, a: int, b: int, t: int, n2: int, a2: int, b2: int, t2: int
) -> SchemeRow:
    """Closed forms for the star product of two intersection-size colorings.

    K = C(n,b) C(n2,b2),  F = C(n,a) C(n2,a2),
    1-M/N = C(b,t) C(b2,t2) C(n-b,a-t) C(n2-b2,a2-t2) / F,
    R = C(n,a+b-2t) C(n-(a+b-2t),t) C(n2,a2+b2-2t2) C(n2-(a2+b2-2t2),t2) / F.
    """
    for nn, aa, bb, tt in ((n, a, b, t), (n2, a2, b2, t2)):
        if not (0 < aa < nn and 0 < bb < nn and 0 <= tt <= min(aa, bb) and aa + bb - tt <= nn):
            raise ParameterError(f"bad intersection parameters n={nn} a={aa} b={bb} t={tt}")
    f_val = binomial(n, a) * binomial(n2, a2)
    degree = (
        binomial(b, t) * binomial(b2, t2) * binomial(n - b, a - t) * binomial(n2 - b2, a2 - t2)
    )
    s_val = (
        binomial(n, a + b - 2 * t)
        * binomial(n - (a + b - 2 * t), t)
        * binomial(n2, a2 + b2 - 2 * t2)
        * binomial(n2 - (a2 + b2 - 2 * t2), t2)
    )
    return SchemeRow(
        label=f"n={n} a={a} b={b} t={t} x n={n2} a={a2} b={b2} t={t2}",
        K=binomial(n, b) * binomial(n2, b2),
        one_minus_MN=Fraction(degree, f_val),
        F=f_val,
        R=Fraction(s_val, f_val),
    )


def _cycle_color_groups(m: int) -> int:
    # vertex colors + two oriented copies of the 3 edge colors
    return 9 if m == 3 else 8


def cycle_family_params(n: int, a: int, b: int, m: int) -> SchemeRow:
    """Closed forms for the cycle product over a disjoint-union coloring.

    K = m C(n,b),  F = m C(n,a),  1-M/N = (3/m) C(n-b,a)/C(n,a),
    R = (8/m) C(n,a+b)/C(n,a)  (9/m when m = 3).
    """
    if a < 1 or b < 1 or a + b > n:
        raise ParameterError(f"bad disjoint-union parameters n={n} a={a} b={b}")
    if not (m == 3 or (m >= 6 and m % 6 == 0)):
        raise ParameterError(f"cycle forms need m = 3 or 6 | m, got m={m}")
    base_f = binomial(n, a)
    return SchemeRow(
        label=f"n={n} a={a} b={b} m={m}",
        K=m * binomial(n, b),
        one_minus_MN=Fraction(3 * binomial(n - b, a), m * base_f),
        F=m * base_f,
        R=Fraction(_cycle_color_groups(m) * binomial(n, a + b), m * base_f),
    )


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            while q % d == 0:
                q //= d
            return q == 1
        d += 1
    return True


def minimal_x(n: int, l: int) -> int:
    """Least positive x with (l+1) | n*x."""
    return (l + 1) // math.gcd(n, l + 1)


def block_code_params(n: int, q: int, l: int, x: int) -> SchemeRow:
    """Parameter arithmetic of the linear-block-code family.

    F = (q-1) q^l x n / (l+1),  S = x q^l,  g = x (q-1) q^(l-1),
    M/N = 1 - (l+1)/(nq),  R = (l+1)/((q-1) n).  K = nq, inferred from the
    published comparison rows (marked in the note).  x must be the least
    positive integer with (l+1) | nx; it is validated, not computed.  Only the
    arithmetic is implemented, so n > l is not required here; the published
    cycle-transform rows themselves use n < l.
    """
    if n < 1 or l < 1:
        raise ParameterError(f"need n, l >= 1, got n={n} l={l}")
    if not _is_prime_power(q):
        raise ParameterError(f"q must be a prime power, got q={q}")
    want = minimal_x(n, l)
    if x != want:
        raise ParameterError(f"x={x} is not minimal: least x with {l + 1} | {n}x is {want}")
    f_val = (q - 1) * q**l * x * n // (l + 1)
    g_val = x * (q - 1) * q ** (l - 1)
    s_val = x * q**l
    row = SchemeRow(
        label=f"({n},{q},{l},{x})",
        K=n * q,
        one_minus_MN=Fraction(l + 1, n * q),
        F=f_val,
        R=Fraction(l + 1, (q - 1) * n),
        note="K = n*q inferred from the published comparison rows",
    )
    # the two published shortcut forms must agree with the g/S arithmetic
    assert row.one_minus_MN == Fraction(g_val, f_val)
    assert row.R == Fraction(s_val, f_val)
    return row


def block_code_cycle_params(n: int, q: int, l: int, x: int, m: int) -> SchemeRow:
    """Cycle-product transform of the block-code family:
    (K, F, Z, S) -> (mK, mF, mF - 3g, 8S) for 6 | m (9S when m = 3)."""
    if not (m == 3 or (m >= 6 and m % 6 == 0)):
        raise ParameterError(f"cycle forms need m = 3 or 6 | m, got m={m}")
    base = block_code_params(n, q, l, x)
    g_val = x * (q - 1) * q ** (l - 1)
    s_val = x * q**l
    return SchemeRow(
        label=f"({n},{q},{l},{x}) m={m}",
        K=m * base.K,
        one_minus_MN=Fraction(3 * g_val, m * base.F),
        F=m * base.F,
        R=Fraction(_cycle_color_groups(m) * s_val, m * base.F),
        note=base.note,
    )


@dataclass(frozen=True)
class TableRow:
    """A report row: exact scheme values plus the printed ones and flags.

    ``divergence`` names each column whose printed value differs from the
    exact one (or that has no exact value); ``not-recomputed`` marks baseline
    rows taken verbatim from the published comparison.
    """

    row: SchemeRow
    paper_values: tuple[tuple[str, str], ...] = ()
    divergence: tuple[str, ...] = ()


_COLUMNS = ("K", "one_minus_MN", "F", "R")


def _compare(row: SchemeRow, printed: dict[str, tuple[str, Optional[Fraction]]],
             extra_divergence: tuple[str, ...] = ()) -> TableRow:
    divergent = list(extra_divergence)
    shown: list[tuple[str, str]] = []
    for col in _COLUMNS:
        if col not in printed:
            continue
        display, exact_printed = printed[col]
        ours = getattr(row, col)
        if ours is None or (exact_printed is not None and Fraction(ours) != exact_printed):
            divergent.append(col)
            shown.append((col, display))
    if "label" in printed:
        display, _ = printed["label"]
        if display != row.label:
            divergent.append("label")
            shown.append(("label", display))
    return TableRow(row=row, paper_values=tuple(shown), divergence=tuple(divergent))


def _baseline(label: str, k: int, one_minus: Fraction, f: int, r: Fraction, note: str) -> TableRow:
    row = SchemeRow(label=label, K=k, one_minus_MN=one_minus, F=f, R=r, note=note)
    shown = tuple(
        (col, str(val))
        for col, val in (("K", k), ("one_minus_MN", one_minus), ("F", f), ("R", r))
    )
    return TableRow(row=row, paper_values=shown, divergence=("not-recomputed",))


def _table_ii() -> list[TableRow]:
    note = "published baseline scheme; F printed from a Stirling estimate"
    return [
        _baseline("n~6*sqrt(5)", 90, Fraction(1, 4), 2382, Fraction(1), note),
        _baseline("n~2*sqrt(66)", 132, Fraction(1, 4), 15406, Fraction(1), note),
        _baseline("n~2*sqrt(91)", 182, Fraction(1, 4), 101147, Fraction(1), note),
    ]


def _table_iii() -> list[TableRow]:
    rows = []
    printed = {
        10: {"K": ("90", Fraction(90)), "one_minus_MN": ("1/4", Fraction(1, 4)),
             "F": ("210", Fraction(210)), "R": ("5", Fraction(5))},
        12: {"K": ("132", Fraction(132)), "one_minus_MN": ("1/4", Fraction(1, 4)),
             "F": ("792", Fraction(792)), "R": ("7", Fraction(7))},
        14: {"K": ("182", Fraction(182)), "one_minus_MN": ("1/4", Fraction(1, 4)),
             "R": ("8", Fraction(8)), "F": ("3003", Fraction(3003))},
    }
    for n in (10, 12, 14):
        row = restricted_family_params(n, 1, n // 2, 1)
        row = SchemeRow(
            label=f"n={n}",
            K=row.K, one_minus_MN=row.one_minus_MN, F=row.F, R=row.R,
            note="printed 1-M/N is the large-b asymptote ((lambda-1)/lambda)^2 = 1/4",
        )
        rows.append(_compare(row, printed[n]))
    return rows


def _table_iv() -> list[TableRow]:
    note = "published baseline scheme; F printed from a Stirling estimate"
    return [
        _baseline("n~sqrt(1568)", 784, Fraction(1, 4), 2598778, Fraction("39.50"), note),
        _baseline("n~sqrt(2592)", 1296, Fraction(1, 4), 255881905, Fraction("50.91"), note),
        _baseline("n~sqrt(4050)", 2025, Fraction(1, 4), 45902134943, Fraction("63.64"), note),
    ]


def _table_v() -> list[TableRow]:
    rows = []
    printed_by_a = {
        4: {"K": ("784", Fraction(784)), "one_minus_MN": ("1/4", Fraction(1, 4)),
            "F": ("5215", Fraction(5215)), "R": ("16", Fraction(16))},
        5: {"K": ("2025", Fraction(2025)), "one_minus_MN": ("1/4", Fraction(1, 4)),
            "F": ("66754", Fraction(66754)), "R": ("25", Fraction(25))},
    }
    for a in (4, 5):
        n = 2 * a
        row = star_intersection_params(n, a, 2, 1, n, a, 2, 1)
        row = SchemeRow(
            label=f"a={a}",
            K=row.K, one_minus_MN=row.one_minus_MN, F=row.F, R=row.R,
            f_estimate=stirling_binomial_estimate(n, a) ** 2,
            note="printed F is a Stirling estimate; printed 1-M/N the large-n asymptote",
        )
        rows.append(_compare(row, printed_by_a[a]))
    printed_half = {
        "K": ("1296", Fraction(1296)), "one_minus_MN": ("1/4", Fraction(1, 4)),
        "F": ("18542", Fraction(18542)), "R": ("20.25", Fraction(81, 4)),
    }
    # a = 4.5 with n = 9: K = C(9,2)^2, R = (n-a)^2, and 1-M/N = (9/16)^2
    # survive gamma-function cancellation; F itself indexes no integral scheme.
    half = SchemeRow(
        label="a=4.5",
        K=binomial(9, 2) ** 2,
        one_minus_MN=Fraction(81, 256),
        F=None,
        R=Fraction(81, 4),
        f_estimate=stirling_binomial_estimate(9, 4.5) ** 2,
        note="a=4.5 is non-integral: K and R survive cancellation, F does not",
    )
    mid = _compare(half, printed_half)
    rows.insert(1, mid)
    return rows


def _table_vi() -> list[TableRow]:
    note = "published baseline scheme; F printed from a Stirling estimate"
    return [
        _baseline("n~sqrt(540)", 270, Fraction(1, 4), 1637369, Fraction(1), note),
        _baseline("n~sqrt(792)", 396, Fraction(1, 4), 44564986, Fraction(1), note),
        _baseline("n~sqrt(1092)", 546, Fraction(1, 4), 1230404836, Fraction(1), note),
    ]


def _table_vii() -> list[TableRow]:
    rows = []
    printed_by_n = {
        10: {"K": ("270", Fraction(270)), "one_minus_MN": ("1/4", Fraction(1, 4)),
             "F": ("703", Fraction(703)), "R": ("7.77", Fraction("7.77"))},
        12: {"K": ("396", Fraction(396)), "one_minus_MN": ("1/4", Fraction(1, 4)),
             "F": ("2152", Fraction(2152)), "R": ("7.77", Fraction("7.77"))},
        14: {"K": ("546", Fraction(546)), "one_minus_MN": ("1/4", Fraction(1, 4)),
             "F": ("6679", Fraction(6679)), "R": ("7.77", Fraction("7.77"))},
    }
    for n in (10, 12, 14):
        row = cycle_family_params(n, n // 2, 2, 6)
        row = SchemeRow(
            label=f"n={n}", K=row.K, one_minus_MN=row.one_minus_MN, F=row.F, R=row.R,
            note="printed F and R do not follow from the scheme's own closed forms",
        )
        rows.append(_compare(row, printed_by_n[n]))
    return rows


def _table_viii() -> list[TableRow]:
    printed = [
        {"label": ("(24,2,17,3)", None), "K": ("48", Fraction(48)),
         "one_minus_MN": ("3/8", Fraction(3, 8)), "F": ("2^19", Fraction(2**19)),
         "R": ("3/4", Fraction(3, 4))},
        {"label": ("(60,2,44,4)", None), "K": ("120", Fraction(120)),
         "one_minus_MN": ("3/8", Fraction(3, 8)), "F": ("2^46", Fraction(2**46)),
         "R": ("3/4", Fraction(3, 4))},
        {"label": ("(96,2,71,3)", None), "K": ("192", Fraction(192)),
         "one_minus_MN": ("3/8", Fraction(3, 8)), "F": ("2^73", Fraction(2**73)),
         "R": ("3/4", Fraction(3, 4))},
    ]
    # the printed x=4 in row 2 is not minimal; x=3 is, and reproduces F=2^46
    args = [(24, 2, 17, 3), (60, 2, 44, 3), (96, 2, 71, 3)]
    return [_compare(block_code_params(*a), pr) for a, pr in zip(args, printed)]


def _table_ix() -> list[TableRow]:
    printed = [
        {"K": ("48", Fraction(48)), "one_minus_MN": ("3/8", Fraction(3, 8)),
         "F": ("3*2^7", Fraction(3 * 2**7)), "R": ("2", Fraction(2))},
        {"K": ("120", Fraction(120)), "one_minus_MN": ("3/8", Fraction(3, 8)),
         "F": ("3*2^16", Fraction(3 * 2**16)), "R": ("2", Fraction(2))},
        {"K": ("192", Fraction(192)), "one_minus_MN": ("3/8", Fraction(3, 8)),
         "F": ("3*2^25", Fraction(3 * 2**25)), "R": ("2", Fraction(2))},
    ]
    args = [(4, 2, 5, 3, 6), (10, 2, 14, 3, 6), (16, 2, 23, 3, 6)]
    return [_compare(block_code_cycle_params(*a), pr) for a, pr in zip(args, printed)]


_TABLES: dict[str, Callable[[], list[TableRow]]] = {
    "II": _table_ii,
    "III": _table_iii,
    "IV": _table_iv,
    "V": _table_v,
    "VI": _table_vi,
    "VII": _table_vii,
    "VIII": _table_viii,
    "IX": _table_ix,
}


def table_report(which: str) -> list[TableRow]:
    """Rows of one published comparison table, II through IX."""
    key = which.strip().upper()
    if key not in _TABLES:
        raise ParameterError(f"no such table {which!r}; choose from {', '.join(TABLE_NAMES)}")
    return _TABLES[key]()


def _cell(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def render_csv(rows: list[TableRow], include_estimates: bool = False) -> str:
    """CSV with exact rationals as p/q.

    The standard columns never hold floats; ``include_estimates`` appends an
    ``f_estimate`` column carrying the Stirling figures where one exists.
    """
    header = CSV_HEADER + (",f_estimate" if include_estimates else "")
    lines = [header]
    for tr in rows:
        r = tr.row
        paper = ";".join(f"{col}={val}" for col, val in tr.paper_values)
        divergence = ";".join(tr.divergence)
        cells = [r.label, _cell(r.K), _cell(r.one_minus_MN), _cell(r.F), _cell(r.R), paper, divergence]
        if include_estimates:
            cells.append("" if r.f_estimate is None else f"{r.f_estimate:.1f}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
