"""Sequences generated by completely monotonic gamma- and q-gamma quotients.

Each generator produces a positive sequence x_1, x_2, ... whose partial
products are samples of a completely monotonic function, hence an even
moment sequence.  The closed forms here are the quotient counterparts of
the ``gamma_quotient``, ``q_gamma_quotient`` and ``grinshpan_ismail_s3``
families in :mod:`nlcpoly.sequences`; this module adds the direct
gamma-function evaluation routes used to cross-check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Tuple

import numpy as np

from .sequences import ParameterDomainError, SequenceSpec, x_value
from .special import log_gamma


def xn_from_gamma_quotient(a, b, c, n: int):
    """x_n = (c+n-1)(a+b-c+n-1) / ((a+n-1)(b+n-1)); exact for exact inputs."""
    spec = SequenceSpec("gamma_quotient", a=a, b=b, c=c)
    return x_value(spec, n)


def xn_from_q_quotient(A, B, C, q, n: int):
    """q-quotient sequence value.

    x_n = (1 - C s)(1 - (AB/C) s) / ((1 - A s)(1 - B s)) with s = q^(n-1).
    The second numerator factor carries the exponent a + b - c, which is the
    combination AB/C; this is the unique reading consistent with the q -> 1
    limit reproducing :func:`xn_from_gamma_quotient`.
    """
    spec = SequenceSpec("q_gamma_quotient", A=A, B=B, C=C, q=q)
    return x_value(spec, n)


def xn_grinshpan_ismail_s3(a1, a2, a3, n: int):
    """x_n = n(n+a1+a2)(n+a1+a3)(n+a2+a3) / ((n+a1)(n+a2)(n+a3)(n+a1+a2+a3))
    for a1 >= a2 >= a3 >= 0; satisfies x_n < 1 (nondegenerate) and
    sqrt(x_n) - 1 = O(1/n^2)."""
    spec = SequenceSpec("grinshpan_ismail_s3", a1=a1, a2=a2, a3=a3)
    return x_value(spec, n)


# ---------------------------------------------------------------------------
# the F_s gamma-product family
# ---------------------------------------------------------------------------

def fs_subset_sums(s: int, a: Sequence) -> Tuple[list, list]:
    """Sums of the a_i over even-size and odd-size index subsets of {1..s}.

    The empty subset contributes 0 to the even side, so the two lists have
    equal length 2^(s-1).
    """
    if s < 1:
        raise ParameterDomainError("s must be at least 1")
    if len(a) != s:
        raise ParameterDomainError(f"need exactly {s} parameters, got {len(a)}")
    even_sums, odd_sums = [], []
    for size in range(s + 1):
        for idx in combinations(range(s), size):
            total = sum((a[i] for i in idx), start=Fraction(0) if all(
                isinstance(v, (int, Fraction)) for v in a) else 0.0)
            (even_sums if size % 2 == 0 else odd_sums).append(total)
    return even_sums, odd_sums


def log_fs(s: int, a: Sequence, x: float) -> float:
    """log F_s(x): gamma factors Gamma(x + sum) over even subsets in the
    numerator and odd subsets in the denominator."""
    even_sums, odd_sums = fs_subset_sums(s, a)
    if any(x + t <= 0 for t in even_sums + odd_sums):
        raise ParameterDomainError("all gamma arguments must be positive")
    return (sum(log_gamma(x + float(t)) for t in even_sums)
            - sum(log_gamma(x + float(t)) for t in odd_sums))


def fs_quotient(s: int, a: Sequence, a0, n: int) -> float:
    """F_s(n + a0) / F_s(n + a0 - 1), evaluated through log-gamma."""
    return math.exp(log_fs(s, a, n + float(a0)) - log_fs(s, a, n + float(a0) - 1.0))


@dataclass(frozen=True)
class FsConsistencyReport:
    a0: float
    n_max: int
    max_rel_deviation: float
    closed_form_is_a0_one: bool


def fs_quotient_consistency(a0, a1, a2, a3, n_max: int) -> FsConsistencyReport:
    """Compare the direct F_3 quotient with the s = 3 closed form.

    The closed form is tied to the association choice a0 = 1; for other a0
    the report is informational (the quotient defines a shifted sequence).
    """
    if not (a1 >= a2 >= a3 >= 0 and a0 >= 0):
        raise ParameterDomainError("need a1 >= a2 >= a3 >= 0 and a0 >= 0")
    a = (a1, a2, a3)
    worst = 0.0
    for n in range(1, n_max + 1):
        via_gamma = fs_quotient(3, a, a0, n)
        closed = float(xn_grinshpan_ismail_s3(a1, a2, a3, n))
        worst = max(worst, abs(via_gamma - closed) / abs(closed))
    return FsConsistencyReport(float(a0), n_max, worst, a0 == 1)


def _gi_s3_difference_polys(a1, a2, a3):
    # num and den are both monic quartics with equal cubic coefficient
    # 2(a1+a2+a3), so num - den has degree <= 2 and x_n - 1 = diff(n)/den(n)
    # evaluates without cancellation; exact Fractions keep it that way.
    from . import sequences as _seq  # noqa: PLC0415
    a1, a2, a3 = Fraction(a1), Fraction(a2), Fraction(a3)
    num = _seq._linear(0, a1 + a2, a1 + a3, a2 + a3)
    den = _seq._linear(a1, a2, a3, a1 + a2 + a3)
    diff = [float(p - q) for p, q in zip(num, den)]
    return diff[:3], [float(c) for c in den]


def sqrt_deviation_scaled(a1, a2, a3, n) -> float:
    """n^2 * |sqrt(x_n) - 1| for the s = 3 sequence, without cancellation.

    Accepts a scalar n or an integer array; stays accurate far beyond the
    point where x_n is indistinguishable from 1 in floats.
    """
    SequenceSpec("grinshpan_ismail_s3", a1=a1, a2=a2, a3=a3)  # parameter check
    diff, den = _gi_s3_difference_polys(a1, a2, a3)
    nn = np.asarray(n, dtype=float)
    dval = ((diff[2] * nn + diff[1]) * nn + diff[0]) / np.polyval(den[::-1], nn)
    out = nn * nn * np.abs(dval) / (np.sqrt(1.0 + dval) + 1.0)
    return float(out) if np.isscalar(n) or getattr(n, "ndim", 0) == 0 else out
