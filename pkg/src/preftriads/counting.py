"""Closed-form counts of triad classes and of order-3 permutations.

All arithmetic is on Python integers, so results are exact for every n.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import factorial


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return q


def order3_count(n: int) -> int:
    """Number of elements of order 3 in the symmetric group on n points."""
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    nf = factorial(n)
    return sum(
        _exact_div(nf, factorial(n - 3 * m) * factorial(m) * 3**m) for m in range(1, n // 3 + 1)
    )


def class_count(n: int) -> int:
    """Number of equivalence classes of preference triads on n alternatives."""
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    nf = factorial(n)
    return _exact_div(nf * (nf + 3) + 2 * (order3_count(n) + 1), 6)


def class_count_proof_variant(n: int) -> tuple[int, int]:
    """Numerator and denominator of the alternative ``(n!(n!+3) + l_n/2) / 6`` expression.

    Kept only so tests can show that this expression does not count the
    classes; returned as a fraction because it is generally not an integer.
    """
    nf = factorial(n)
    ell = order3_count(n)
    return 2 * nf * (nf + 3) + ell, 12


@dataclass(frozen=True)
class OrbitCaseCounts:
    all_equal: int
    one_differs: int
    cyclic: int
    generic: int

    @property
    def total(self) -> int:
        return self.all_equal + self.one_differs + self.cyclic + self.generic

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.all_equal, self.one_differs, self.cyclic, self.generic)


def orbit_case_counts(n: int) -> OrbitCaseCounts:
    """Split of the class count by the shape of ``(e, s, p)``.

    The four shapes are: all three orderings equal; exactly two equal;
    ``(e, s, s^2)`` with ``s`` of order 3; and everything else.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    nf = factorial(n)
    ell = order3_count(n)
    return OrbitCaseCounts(
        all_equal=1,
        one_differs=nf - 1,
        cyclic=_exact_div(ell, 2),
        generic=_exact_div(nf * nf - 1 - 3 * (nf - 1) - ell, 6),
    )


def count_table(n_min: int, n_max: int) -> list[dict[str, int]]:
    if not 2 <= n_min <= n_max:
        raise ValueError(f"need 2 <= n_min <= n_max, got {n_min}..{n_max}")
    return [
        {"n": n, "n_factorial": factorial(n), "order3": order3_count(n), "classes": class_count(n)}
        for n in range(n_min, n_max + 1)
    ]


def count_table_csv(n_min: int, n_max: int) -> str:
    rows = count_table(n_min, n_max)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
