"""Even moment sequences, Hankel determinants and determinant polynomials.

The even extension of the radial measure behind a sequence spec has moments
mu_{2n} = x_1 x_2 ... x_n and mu_{2n+1} = 0.  Hankel determinants of these
moments certify positive definiteness (Sylvester criterion); the bordered
Hankel determinant yields the monic polynomials orthogonal with respect to
the even measure.

Exact sequences use fraction-free (Bareiss) elimination; floating sequences
go through mpmath with at least a 128-bit significand and a pivot-ratio
condition estimate, escalating precision rather than silently rounding.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from mpmath import mp, mpf

from .sequences import SequenceSpec, x_float, x_value
from .special import cm_sequence_test, CMReport

_MIN_PRECISION = 160  # bits; comfortably past the 128-bit contract
_MAX_PRECISION = 1280


class PrecisionError(ArithmeticError):
    """Raised when escalating precision still cannot certify a determinant sign."""


class MomentSequence:
    """Lazily computed even moments of one sequence spec.

    mu_{2n} = x_n! (exact Fractions when the sequence rule is rational,
    floats otherwise) and mu_{2n+1} = 0.  Extension is memoized behind a
    lock so concurrent readers see value-identical prefixes.
    """

    def __init__(self, spec: SequenceSpec):
        self.spec = spec
        self.representation = "rational" if spec.is_rational else "float"
        self._even: List[Union[Fraction, float]] = [Fraction(1) if spec.is_rational else 1.0]
        self._lock = threading.Lock()

    def _extend(self, count: int) -> None:
        with self._lock:
            while len(self._even) < count:
                k = len(self._even)
                nxt = self._even[-1] * x_value(self.spec, k)
                if self.representation == "float" and math.isinf(float(nxt)):
                    self.representation = "log"
                self._even.append(nxt)

    def even_moment(self, k: int) -> Union[Fraction, float]:
        """mu_{2k} = x_k!."""
        if k < 0:
            raise ValueError("moment order must be nonnegative")
        self._extend(k + 1)
        return self._even[k]

    def moment(self, m: int) -> Union[Fraction, float]:
        """mu_m, including the vanishing odd orders."""
        if m % 2:
            return Fraction(0) if self.representation == "rational" else 0.0
        return self.even_moment(m // 2)

    def log_even_moment(self, k: int) -> float:
        from .sequences import x_log_factorial  # noqa: PLC0415
        return x_log_factorial(self.spec, k)

    def hankel_matrix(self, n: int) -> list:
        """(n+1) x (n+1) matrix [mu_{i+j}]."""
        self._extend(n + 1)
        return [[self.moment(i + j) for j in range(n + 1)] for i in range(n + 1)]


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def bareiss_determinant(matrix: list) -> Union[Fraction, int]:
    """Exact determinant by fraction-free elimination with row pivoting."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _mp_determinant(matrix: list, prec: int):
    """Pivoted elimination at fixed binary precision; returns (det, cond_est)."""
    with mp.workprec(prec):
        m = [[mpf(x) for x in row] for row in matrix]
        n = len(m)
        det = mpf(1)
        pivots = []
        for k in range(n):
            pivot_row = max(range(k, n), key=lambda i: abs(m[i][k]))
            if m[pivot_row][k] == 0:
                return mpf(0), mpf("inf")
            if pivot_row != k:
                m[k], m[pivot_row] = m[pivot_row], m[k]
                det = -det
            pivots.append(abs(m[k][k]))
            det *= m[k][k]
            for i in range(k + 1, n):
                factor = m[i][k] / m[k][k]
                for j in range(k, n):
                    m[i][j] -= factor * m[k][j]
        cond = max(pivots) / min(pivots) if pivots else mpf(1)
        return det, cond


@dataclass(frozen=True)
class HankelResult:
    order: int
    value: Union[Fraction, float]
    positive: bool
    exact: bool
    condition_estimate: Optional[float] = None
    precision_bits: Optional[int] = None


def hankel_determinant(moments: MomentSequence, n: int) -> HankelResult:
    """D_n = det [mu_{i+j}], 0 <= i, j <= n.

    Positive for every moment sequence of a measure with infinite support.
    The floating path escalates precision until the sign is certified by a
    margin; it never silently rounds a near-zero determinant.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    matrix = moments.hankel_matrix(n)
    if moments.representation == "rational":
        value = bareiss_determinant(matrix)
        return HankelResult(n, value, value > 0, True)
    prec = _MIN_PRECISION
    cond = mpf("inf")
    while prec <= _MAX_PRECISION:
        det, cond = _mp_determinant(matrix, prec)
        if det == 0:
            return HankelResult(n, 0.0, False, False, float(cond), prec)
        # LU sign is trustworthy once the pivot-ratio ill-conditioning proxy
        # leaves a 30-bit margin below the working precision
        if cond < mpf(2) ** (prec - 30):
            return HankelResult(n, float(det), det > 0, False, float(cond), prec)
        prec *= 2
    raise PrecisionError(
        f"Hankel determinant of order {n} not certifiable below "
        f"{_MAX_PRECISION} bits (condition estimate {float(cond):.3e})")


def hankel_polynomial(moments: MomentSequence, n: int) -> list:
    """Monic degree-n polynomial orthogonal to 1, x, ..., x^(n-1) under the
    even moment functional, as ascending coefficients.

    Built from the bordered Hankel determinant: the k-th coefficient is the
    signed n x n minor obtained by deleting the power column k, divided by
    D_{n-1}.  Exact for exact moments.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    if moments.representation != "rational":
        raise NotImplementedError("determinant polynomials require exact moments")
    d_prev = bareiss_determinant(moments.hankel_matrix(n - 1))
    if d_prev == 0:
        raise ZeroDivisionError("degenerate moment sequence: D_{n-1} = 0")
    rows = [[moments.moment(i + j) for j in range(n + 1)] for i in range(n)]
    coeffs = []
    for k in range(n + 1):
        minor = [[row[j] for j in range(n + 1) if j != k] for row in rows]
        cof = bareiss_determinant(minor)
        coeffs.append((-1) ** (n + k) * cof / d_prev)
    return coeffs


# ---------------------------------------------------------------------------
# Berg--Duran style classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BergDuranReport:
    hausdorff_ok: bool
    stieltjes_hankels_ok: bool
    cm_report: CMReport
    first_nonpositive_hankel: Optional[tuple]  # (shift, order)
    effective_n_max: int = 0


def berg_duran_check(spec: SequenceSpec, n_max: int, order: int = 8) -> BergDuranReport:
    """Test the hypothesis and the conclusion of the Berg--Duran theorem.

    (i) {1/x_n} should be a Hausdorff moment sequence: run the
    finite-difference criterion on a(n) = 1/x_{n+1} (x_0 = 0 is excluded by
    shifting the index).  (ii) The partial products s_n = x_n! should then be
    a Stieltjes moment sequence: verify positivity of the Hankel
    determinants of [s_{i+j}] and of the shifted [s_{i+j+1}] up to order
    floor(n_max / 2).  Both verdicts are reported; neither is an error.

    List-backed sequences with fewer than n_max + order + 1 values are
    scanned over the range they can support (see ``effective_n_max``).
    """
    from .sequences import _max_index  # noqa: PLC0415
    top = _max_index(spec)
    if top is not None:
        order = min(order, max(1, top - 2))
        n_max = max(1, min(n_max, top - order - 1))
    cm = cm_sequence_test(lambda n: 1.0 / x_float(spec, n + 1), n_max, order)

    exact = spec.is_rational
    top = n_max // 2
    s: List[Union[Fraction, float]] = [Fraction(1) if exact else 1.0]
    for k in range(1, 2 * top + 2):
        s.append(s[-1] * x_value(spec, k))
    stieltjes_ok = True
    first_bad = None
    for shift in (0, 1):
        for size in range(1, top + 1):
            mat = [[s[i + j + shift] for j in range(size)] for i in range(size)]
            if exact:
                positive = bareiss_determinant(mat) > 0
            else:
                det, _ = _mp_determinant(mat, _MIN_PRECISION)
                positive = det > 0
            if not positive:
                stieltjes_ok = False
                first_bad = (shift, size)
                break
        if not stieltjes_ok:
            break
    return BergDuranReport(cm.passed, stieltjes_ok, cm, first_bad, n_max)
