"""Positive sequences x_1, x_2, ... and their partial products.

A sequence spec is the single source of truth for one model: it fixes a
family (closed-form rule, explicit list, or Taylor-norm quotients) together
with its parameters.  Everything downstream -- moments, recurrence
polynomials, Jacobi truncations, measure checks -- is driven by ``x_value``
and ``x_factorial``.

Families with rational rules and rational parameters evaluate exactly as
``fractions.Fraction``; the floating view is a separate explicit call.
Diagnostic scans (monotonicity, the nonlinear necessary inequalities) return
reports instead of raising, so sequences that fail to be moment sequences can
still be analyzed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

Number = Union[int, float, Fraction]


class ParameterDomainError(ValueError):
    """A family parameter violates its admissibility constraint."""


class SequenceRangeError(IndexError):
    """An index lies outside the range a spec can evaluate."""


def _as_number(value) -> Number:
    """Coerce config-style values ('3/2', '0.25', 2) to Fraction/float."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        s = value.strip()
        try:
            return Fraction(s)
        except ValueError:
            return float(s)
    raise TypeError(f"cannot interpret {value!r} as a number")


def _is_exact(*values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def _maybe_float(value: Number, exact: bool) -> Number:
    return value if exact else float(value)


# ---------------------------------------------------------------------------
# family rules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Family:
    name: str
    param_names: tuple
    validate: Callable          # (params, strict) -> None, raises ParameterDomainError
    x: Callable                 # (params, n) -> Number
    # (num_coeffs, den_coeffs) ascending in n, exact, or None if x is not a
    # fixed rational function of n
    poly_pair: Optional[Callable] = None
    # exact limit of x_n: Fraction, math.inf, or None (must be probed)
    limit: Optional[Callable] = None


def _poly_eval(coeffs: Sequence, n) -> Number:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * n + c
    return acc


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _linear(*roots):
    """Product of monic linear factors (n + r) as ascending coefficients."""
    poly = [Fraction(1)]
    for r in roots:
        poly = _poly_mul(poly, [Fraction(r), Fraction(1)])
    return poly


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterDomainError(message)


def _validate_half_integer_j(params, strict):
    j = params["j"]
    _require(j > 0, "j must be positive")
    if strict:
        _require(_is_exact(j) and Fraction(2 * j).denominator == 1,
                 "j must be a positive half-integer (1/2, 1, 3/2, ...)")


def _validate_ultraspherical(params, strict):
    nu = params["nu"]
    if strict:
        _require(nu > Fraction(-1, 2), "nu > -1/2 required (weight integrability)")
    else:
        # positivity of x_n for all n >= 1 only needs nu > -1
        _require(nu > -1, "nu > -1 required to keep x_n positive")


def _validate_jacobi_type(params, strict):
    a, b = params["alpha"], params["beta"]
    if strict:
        _require(a > Fraction(-1, 2), "alpha > -1/2 required")
        _require(b > -1, "beta > -1 required")
    else:
        _require(a > Fraction(-1, 2), "alpha > -1/2 required to keep x_n positive")
        _require(a + b > Fraction(-3, 2), "alpha + beta > -3/2 required to keep x_n positive")


def _validate_bessel_orders(params, strict):
    mu, nu = params["mu"], params["nu"]
    _require(mu + nu > 0 and mu - nu > 0, "mu + nu > 0 and mu - nu > 0 required")


def _validate_mpb(params, strict):
    _validate_bessel_orders(params, strict)
    _require(params["beta"] > 0, "beta > 0 required")


def _validate_gamma_quotient(params, strict):
    a, b, c = params["a"], params["b"], params["c"]
    _require(c > 0, "c > 0 required to keep x_1 positive")
    if strict:
        _require(a >= c and b >= c, "a >= c and b >= c required")
    else:
        _require(a > 0 and b > 0, "a > 0 and b > 0 required")


def _validate_q_quotient(params, strict):
    A, B, C, q = params["A"], params["B"], params["C"], params["q"]
    for name, v in (("A", A), ("B", B), ("C", C), ("q", q)):
        _require(0 < v < 1, f"{name} must lie in (0, 1)")
    if strict:
        # exponent admissibility a >= c, b >= c translates to A <= C, B <= C
        _require(A <= C and B <= C, "A <= C and B <= C required (a >= c, b >= c)")


def _validate_gi_s3(params, strict):
    a1, a2, a3 = params["a1"], params["a2"], params["a3"]
    _require(a1 >= a2 >= a3 >= 0, "a1 >= a2 >= a3 >= 0 required")


def _validate_taylor_norms(params, strict):
    norms = params["taylor_norms"]
    _require(len(norms) >= 2, "need at least two Taylor norms")
    _require(norms[0] == 1, "normalization rho(0) = 1 required")
    _require(all(v > 0 for v in norms), "all Taylor norms must be positive")


def _validate_explicit(params, strict):
    values = params["values"]
    _require(len(values) >= 1, "need at least one value")
    _require(all(v > 0 for v in values), "all sequence values must be positive")


def _validate_rational(params, strict):
    num, den = params["num"], params["den"]
    _require(len(num) >= 1 and len(den) >= 1, "need numerator and denominator coefficients")
    _require(num[-1] != 0 and den[-1] != 0, "leading coefficients must be nonzero")
    for n in range(1, 65):
        nv, dv = _poly_eval(num, n), _poly_eval(den, n)
        _require(dv != 0, f"denominator vanishes at n = {n}")
        _require(nv / dv > 0, f"x_{n} is not positive")


def _x_su11(p, n):
    exact = _is_exact(p["j"], n)
    return _maybe_float(Fraction(n) / (2 * p["j"] + n - 1), exact) if exact \
        else n / (2 * float(p["j"]) + n - 1)


def _x_bg(p, n):
    exact = _is_exact(p["j"])
    val = n * (2 * p["j"] + n - 1)
    return Fraction(val) if exact else float(val)


def _x_ultra(p, n):
    nu = p["nu"]
    if _is_exact(nu):
        return (Fraction(n) - Fraction(1, 2)) / (nu + n)
    return (n - 0.5) / (nu + n)


def _x_jacobi(p, n):
    a, b = p["alpha"], p["beta"]
    if _is_exact(a, b):
        return (a + n - Fraction(1, 2)) / (a + b + n + Fraction(1, 2))
    return (a + n - 0.5) / (a + b + n + 0.5)


def _x_mpb(p, n):
    mu, nu, beta = p["mu"], p["nu"], p["beta"]
    if _is_exact(mu, nu, beta):
        return 4 * (mu + nu + n - 1) * (mu - nu + n - 1) / Fraction(beta) ** 2
    return 4.0 / float(beta) ** 2 * (mu + nu + n - 1) * (mu - nu + n - 1)


def _x_bessel_exp(p, n):
    mu, nu = p["mu"], p["nu"]
    if _is_exact(mu, nu):
        return (mu + nu + n - 1) * (mu - nu + n - 1) / (2 * (mu + n - Fraction(1, 2)))
    return (mu + nu + n - 1) * (mu - nu + n - 1) / (2 * (mu + n - 0.5))


def _x_bessel_abs(p, n):
    mu, nu = p["mu"], p["nu"]
    half = Fraction(1, 2) if _is_exact(mu, nu) else 0.5
    num = ((mu + nu + 2 * n - 2) * (mu + nu + 2 * n - 1)
           * (mu - nu + 2 * n - 2) * (mu - nu + 2 * n - 1))
    den = 4 * (mu + 2 * n - 1 - half) * (mu + 2 * n - half)
    return Fraction(num, 1) / den if _is_exact(mu, nu) else float(num) / float(den)


def _x_gamma_quotient(p, n):
    a, b, c = p["a"], p["b"], p["c"]
    num = (c + n - 1) * (a + b - c + n - 1)
    den = (a + n - 1) * (b + n - 1)
    return Fraction(num) / den if _is_exact(a, b, c) else float(num) / float(den)


def _x_q_quotient(p, n):
    # q-analogue of the gamma quotient: the second numerator factor carries
    # the exponent a + b - c, i.e. the combination A*B/C.
    A, B, C, q = p["A"], p["B"], p["C"], p["q"]
    exact = _is_exact(A, B, C, q)
    if not exact:
        A, B, C, q = float(A), float(B), float(C), float(q)
    s = q ** (n - 1)
    num = (1 - C * s) * (1 - (A * B / C) * s)
    den = (1 - A * s) * (1 - B * s)
    return num / den


def _x_gi_s3(p, n):
    a1, a2, a3 = p["a1"], p["a2"], p["a3"]
    exact = _is_exact(a1, a2, a3)
    num = n * (n + a1 + a2) * (n + a1 + a3) * (n + a2 + a3)
    den = (n + a1) * (n + a2) * (n + a3) * (n + a1 + a2 + a3)
    return Fraction(num) / den if exact else float(num) / float(den)


def _x_taylor(p, n):
    norms = p["taylor_norms"]
    if n >= len(norms):
        raise SequenceRangeError(f"n = {n} exceeds the {len(norms) - 1} supplied Taylor norms")
    r = Fraction(norms[n]) / norms[n - 1] if _is_exact(norms[n], norms[n - 1]) \
        else norms[n] / norms[n - 1]
    return r * r


def _x_explicit(p, n):
    values = p["values"]
    if n > len(values):
        raise SequenceRangeError(f"n = {n} exceeds the {len(values)} supplied values")
    v = values[n - 1]
    return Fraction(v) if _is_exact(v) else v


def _x_rational(p, n):
    num, den = p["num"], p["den"]
    exact = _is_exact(*num, *den, n)
    nn = n if exact else float(n)
    return _poly_eval(num, nn) / _poly_eval(den, nn)


def _rational_limit(num, den):
    dn, dd = len(num) - 1, len(den) - 1
    if dn > dd:
        return math.inf
    if dn < dd:
        return Fraction(0)
    return Fraction(num[-1]) / Fraction(den[-1])


_FAMILIES = {}


def _register(fam: _Family) -> None:
    _FAMILIES[fam.name] = fam


_register(_Family(
    "canonical", (), lambda p, s: None,
    lambda p, n: Fraction(n) if _is_exact(n) else float(n),
    poly_pair=lambda p: ([Fraction(0), Fraction(1)], [Fraction(1)]),
    limit=lambda p: math.inf))

_register(_Family(
    "su11", ("j",), _validate_half_integer_j, _x_su11,
    poly_pair=lambda p: ([Fraction(0), Fraction(1)], _linear(2 * p["j"] - 1)),
    limit=lambda p: Fraction(1)))

_register(_Family(
    "barut_girardello", ("j",), _validate_half_integer_j, _x_bg,
    poly_pair=lambda p: (_linear(0, 2 * p["j"] - 1), [Fraction(1)]),
    limit=lambda p: math.inf))

_register(_Family(
    "ultraspherical", ("nu",), _validate_ultraspherical, _x_ultra,
    poly_pair=lambda p: (_linear(Fraction(-1, 2)), _linear(p["nu"])),
    limit=lambda p: Fraction(1)))

_register(_Family(
    "jacobi_type", ("alpha", "beta"), _validate_jacobi_type, _x_jacobi,
    poly_pair=lambda p: (_linear(p["alpha"] - Fraction(1, 2)),
                         _linear(p["alpha"] + p["beta"] + Fraction(1, 2))),
    limit=lambda p: Fraction(1)))

_register(_Family(
    "meixner_pollaczek_bessel", ("mu", "nu", "beta"), _validate_mpb, _x_mpb,
    poly_pair=lambda p: ([4 * c / Fraction(p["beta"]) ** 2 for c in
                          _linear(p["mu"] + p["nu"] - 1, p["mu"] - p["nu"] - 1)],
                         [Fraction(1)]),
    limit=lambda p: math.inf))

_register(_Family(
    "bessel_k_exp", ("mu", "nu"), _validate_bessel_orders, _x_bessel_exp,
    poly_pair=lambda p: (_linear(p["mu"] + p["nu"] - 1, p["mu"] - p["nu"] - 1),
                         [2 * c for c in _linear(p["mu"] - Fraction(1, 2))]),
    limit=lambda p: math.inf))

_register(_Family(
    "bessel_k_abs", ("mu", "nu"), _validate_bessel_orders, _x_bessel_abs,
    # quartic over quadratic in n; substitute m = 2n into linear factors
    poly_pair=lambda p: (
        _poly_mul(_poly_mul([p["mu"] + p["nu"] - 2, Fraction(2)],
                            [p["mu"] + p["nu"] - 1, Fraction(2)]),
                  _poly_mul([p["mu"] - p["nu"] - 2, Fraction(2)],
                            [p["mu"] - p["nu"] - 1, Fraction(2)])),
        [4 * c for c in _poly_mul([p["mu"] - Fraction(3, 2), Fraction(2)],
                                  [p["mu"] - Fraction(1, 2), Fraction(2)])]),
    limit=lambda p: math.inf))

_register(_Family(
    "gamma_quotient", ("a", "b", "c"), _validate_gamma_quotient, _x_gamma_quotient,
    poly_pair=lambda p: (_linear(p["c"] - 1, p["a"] + p["b"] - p["c"] - 1),
                         _linear(p["a"] - 1, p["b"] - 1)),
    limit=lambda p: Fraction(1)))

_register(_Family(
    "q_gamma_quotient", ("A", "B", "C", "q"), _validate_q_quotient, _x_q_quotient,
    limit=lambda p: Fraction(1)))

_register(_Family(
    "grinshpan_ismail_s3", ("a1", "a2", "a3"), _validate_gi_s3, _x_gi_s3,
    poly_pair=lambda p: (_linear(0, p["a1"] + p["a2"], p["a1"] + p["a3"], p["a2"] + p["a3"]),
                         _linear(p["a1"], p["a2"], p["a3"], p["a1"] + p["a2"] + p["a3"])),
    limit=lambda p: Fraction(1)))

_register(_Family("analytic_function", ("taylor_norms",), _validate_taylor_norms, _x_taylor))
_register(_Family("explicit", ("values",), _validate_explicit, _x_explicit))
_register(_Family(
    "rational", ("num", "den"), _validate_rational, _x_rational,
    poly_pair=lambda p: ([Fraction(c) for c in p["num"]], [Fraction(c) for c in p["den"]]),
    limit=lambda p: _rational_limit(p["num"], p["den"])))


def family_names() -> list:
    return sorted(_FAMILIES)


# ---------------------------------------------------------------------------
# spec
# ---------------------------------------------------------------------------

class SequenceSpec:
    """Immutable description of one positive sequence x_1, x_2, ...

    Parameters
    ----------
    family : str
        One of :func:`family_names`.
    strict : bool
        With ``strict=True`` (default) parameters must lie in the admissible
        range tied to an orthogonality weight (e.g. ``nu > -1/2`` for the
        ultraspherical rule).  ``strict=False`` relaxes to the positivity
        domain so that failure of the moment-sequence necessary conditions
        can be demonstrated.
    **params
        Family parameters; ints, Fractions and strings like ``"3/2"`` stay
        exact, floats stay floating.
    """

    __slots__ = ("family", "params", "strict", "_fam")

    def __init__(self, family: str, strict: bool = True, **params):
        if family not in _FAMILIES:
            raise ParameterDomainError(
                f"unknown family {family!r}; known: {', '.join(family_names())}")
        fam = _FAMILIES[family]
        unknown = set(params) - set(fam.param_names)
        missing = set(fam.param_names) - set(params)
        if unknown or missing:
            raise ParameterDomainError(
                f"family {family!r} takes parameters {fam.param_names}; "
                f"got {tuple(sorted(params))}")
        clean = {}
        for key, value in params.items():
            if key in ("taylor_norms", "values", "num", "den"):
                clean[key] = tuple(_as_number(v) for v in value)
            else:
                clean[key] = _as_number(value)
        fam.validate(clean, strict)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", clean)
        object.__setattr__(self, "strict", bool(strict))
        object.__setattr__(self, "_fam", fam)

    def __setattr__(self, *args):
        raise AttributeError("SequenceSpec is immutable")

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"SequenceSpec({self.family}, {inner})"

    def __eq__(self, other):
        return (isinstance(other, SequenceSpec)
                and self.family == other.family and self.params == other.params)

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.params.items()))))

    @property
    def is_rational(self) -> bool:
        """True when x_n evaluates exactly (Fraction) at integer n."""
        try:
            return isinstance(x_value(self, 1), Fraction)
        except SequenceRangeError:
            return False

    def poly_pair(self):
        """Exact (numerator, denominator) coefficients of x as a rational
        function of n, or None for list-backed and q-type families."""
        if self._fam.poly_pair is None:
            return None
        if not _is_exact(*[v for v in self.params.values() if not isinstance(v, tuple)],
                         *[w for v in self.params.values() if isinstance(v, tuple) for w in v]):
            return None
        return self._fam.poly_pair(self.params)


def x_value(spec: SequenceSpec, n: int) -> Number:
    """x_n for n >= 1, exact when the family rule and parameters are rational."""
    if n < 1:
        raise SequenceRangeError("x_n is defined for n >= 1")
    return spec._fam.x(spec.params, n)


def x_float(spec: SequenceSpec, n: int) -> float:
    return float(x_value(spec, n))


def x_factorial(spec: SequenceSpec, n: int) -> Number:
    """Partial product x_1 x_2 ... x_n with the empty product equal to 1."""
    if n < 0:
        raise SequenceRangeError("partial products need n >= 0")
    acc: Number = Fraction(1) if spec.is_rational else 1.0
    for k in range(1, n + 1):
        acc = acc * x_value(spec, k)
    return acc


def x_log_factorial(spec: SequenceSpec, n: int) -> float:
    """log(x_n!), accumulated term by term; immune to overflow."""
    if n < 0:
        raise SequenceRangeError("partial products need n >= 0")
    return sum(math.log(x_float(spec, k)) for k in range(1, n + 1))


def x_from_taylor_norms(norms: Sequence[Number], n: int) -> Number:
    """x_n from Taylor norms rho(0)=1, rho(1), ...: the squared quotient
    (rho(n)/rho(n-1))^2, so that x_n! = rho(n)^2 matches the normalization
    series sum |z|^(2n) / rho(n)^2."""
    if n < 1:
        raise SequenceRangeError("x_n is defined for n >= 1")
    spec = SequenceSpec("analytic_function", taylor_norms=list(norms))
    return x_value(spec, n)


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SequenceLimit:
    """Limit of x_n: kind is 'finite', 'infinite' or 'undetermined'."""
    kind: str
    value: Optional[Number] = None
    error: Optional[float] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


def _max_index(spec: SequenceSpec) -> Optional[int]:
    if spec.family == "explicit":
        return len(spec.params["values"])
    if spec.family == "analytic_function":
        return len(spec.params["taylor_norms"]) - 1
    return None


def x_limit(spec: SequenceSpec, probe_depth: int = 64,
            richardson_order: int = 4) -> SequenceLimit:
    """Limit of x_n as n grows.

    Closed-form rational families report the exact limit of the rational
    rule.  List-backed families are probed at doubling indices and
    Richardson-extrapolated assuming a 1/n expansion; a noisy tail yields
    'undetermined', which is a valid outcome rather than an error.
    """
    if probe_depth < 16:
        raise ValueError("probe_depth must be at least 16")
    fam = spec._fam
    if fam.limit is not None:
        value = fam.limit(spec.params)
        if value == math.inf:
            return SequenceLimit("infinite")
        return SequenceLimit("finite", value, 0.0)

    top = _max_index(spec)
    depth = probe_depth if top is None else min(probe_depth, top)
    if depth < 16:
        return SequenceLimit("undetermined")
    nodes = [max(1, depth >> (richardson_order - j)) for j in range(richardson_order)]
    nodes.append(depth)
    samples = [x_float(spec, n) for n in nodes]

    growing = all(b > a for a, b in zip(samples, samples[1:]))
    if growing and samples[-1] > 1e6 * max(samples[0], 1.0):
        return SequenceLimit("infinite")
    ratios = [b / a for a, b in zip(samples, samples[1:]) if a > 0]
    if growing and all(r > 1.5 for r in ratios):
        return SequenceLimit("infinite")

    table = [samples]
    for m in range(1, len(samples)):
        prev = table[-1]
        fac = float(2 ** m)
        table.append([(fac * prev[j + 1] - prev[j]) / (fac - 1.0)
                      for j in range(len(prev) - 1)])
    estimate = table[-1][0]
    error = abs(table[-1][0] - table[-2][0]) if len(table) >= 2 else math.inf
    scale = max(abs(estimate), 1.0)
    if not math.isfinite(estimate) or error > 1e-3 * scale:
        return SequenceLimit("undetermined")
    return SequenceLimit("finite", estimate, error)


def x_minus_limit(spec: SequenceSpec, n: int) -> float:
    """x_n - lim x for finite-limit families, evaluated without cancellation.

    For rational rules the difference polynomial num - M*den is formed
    exactly, so deviations far below machine epsilon relative to x_n come out
    clean.  Raises for families without a finite closed-form limit.
    """
    pair = spec.poly_pair()
    lim = x_limit(spec)
    if not lim.is_finite:
        raise ValueError("x_minus_limit needs a finite closed-form limit")
    if pair is not None:
        num, den = pair
        m = Fraction(lim.value)
        width = max(len(num), len(den))
        num_p = list(num) + [Fraction(0)] * (width - len(num))
        den_p = list(den) + [Fraction(0)] * (width - len(den))
        diff = [a - m * b for a, b in zip(num_p, den_p)]
        return float(_poly_eval(diff, n)) / float(_poly_eval(den, n))
    if spec.family == "q_gamma_quotient":
        p = spec.params
        A, B, C, q = (float(p[k]) for k in ("A", "B", "C", "q"))
        s = q ** (n - 1)
        # (1-Cs)(1-(AB/C)s) - (1-As)(1-Bs) = -s (A-C)(B-C)/C  (the s^2 terms cancel)
        diff = -s * (A - C) * (B - C) / C
        return diff / ((1 - A * s) * (1 - B * s))
    return x_float(spec, n) - float(lim.value)


# ---------------------------------------------------------------------------
# diagnostic scans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotoneReport:
    monotone: bool
    first_violation: Optional[int]
    bounded_by_L2: Optional[bool]
    bound_first_violation: Optional[int]
    limit: SequenceLimit


def check_monotone_and_bounded(spec: SequenceSpec, n_max: int) -> MonotoneReport:
    """Scan x_1 .. x_{n_max} for strict increase and, when the limit M is
    finite, for x_n < M throughout.  Violations are report fields, not
    errors: they falsify the claim that the sequence came from a moment
    representation.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    top = _max_index(spec)
    if top is not None:
        n_max = min(n_max, top)
    limit = x_limit(spec)

    if spec.family == "q_gamma_quotient":
        return _check_q_quotient_monotone(spec, limit)

    pair = spec.poly_pair()
    monotone, first_violation = True, None
    if pair is not None:
        num, den = pair
        prev_n, prev_d = _poly_eval(num, 1), _poly_eval(den, 1)
        for n in range(2, n_max + 1):
            cur_n, cur_d = _poly_eval(num, n), _poly_eval(den, n)
            # x_n > x_{n-1}  <=>  cur_n * prev_d > prev_n * cur_d  (positive dens)
            if cur_n * prev_d <= prev_n * cur_d:
                monotone, first_violation = False, n
                break
            prev_n, prev_d = cur_n, cur_d
    else:
        prev = x_value(spec, 1)
        for n in range(2, n_max + 1):
            cur = x_value(spec, n)
            if cur <= prev:
                monotone, first_violation = False, n
                break
            prev = cur

    bounded, bound_violation = None, None
    if limit.is_finite:
        bounded, bound_violation = True, None
        if pair is not None:
            # sign of x_n - M is the sign of the exact difference polynomial
            num, den = pair
            m = Fraction(limit.value)
            width = max(len(num), len(den))
            num_p = list(num) + [Fraction(0)] * (width - len(num))
            den_p = list(den) + [Fraction(0)] * (width - len(den))
            diff = [a - m * b for a, b in zip(num_p, den_p)]
            while diff and diff[-1] == 0:
                diff.pop()
            for n in range(1, n_max + 1):
                if diff and _poly_eval(diff, n) >= 0:
                    bounded, bound_violation = False, n
                    break
            if not diff:  # x_n = M identically
                bounded, bound_violation = False, 1
        else:
            for n in range(1, n_max + 1):
                if x_value(spec, n) >= limit.value:
                    bounded, bound_violation = False, n
                    break
    return MonotoneReport(monotone, first_violation, bounded, bound_violation, limit)


def _check_q_quotient_monotone(spec: SequenceSpec, limit: SequenceLimit) -> MonotoneReport:
    # x_n - 1 = -s (A-C)(B-C) / (C (1-As)(1-Bs)) with s = q^(n-1); the sign
    # and the geometric decay of |x_n - 1| decide the scan exactly, without
    # evaluating q^n (which underflows long before typical n_max).
    p = spec.params
    sign = (p["A"] - p["C"]) * (p["B"] - p["C"])
    if sign == 0:  # constant sequence x_n = 1 = L^2
        return MonotoneReport(False, 2, False, 1, limit)
    if sign > 0:   # x_n < 1, |x_n - 1| strictly decreasing
        return MonotoneReport(True, None, True, None, limit)
    return MonotoneReport(False, 2, False, 1, limit)


@dataclass(frozen=True)
class InequalityReport:
    ineq1_ok: bool
    ineq2_ok: bool
    violations: tuple  # of (name, n, lhs, rhs)


def _ineq1_sides(y1, y2, y3, y4):
    lhs = y3 * (y4 - y2) + y1 * (y2 - y1)
    rhs = y2 * (y3 - y2) + 2 * y1 * (y3 - y2)
    return lhs, rhs


def _ineq2_sides(y1, y2, y3, y4):
    lhs = 2 * y1 * y2 * y3 + y2 * y3 * y4
    rhs = y1 * y2 * y2 + y2 * y3 * y3 + y1 * y3 * y4
    return lhs, rhs


def check_nonlinear_inequalities(spec: SequenceSpec, n_max: int,
                                 slack: Optional[float] = None) -> InequalityReport:
    """Necessary nonlinear inequalities for moment-derived sequences.

    Both follow from positivity of integrals of t^{2n} (t^2 - x_{n+1})^2 ...
    against the even measure; the second one from positivity of the order-4
    Hankel determinant of the shifted measure.  Checked for n = 0 ..
    n_max - 4 in the window (x_{n+1}, ..., x_{n+4}).  Comparison is exact
    for rational sequences, otherwise strict up to a relative slack.
    """
    if n_max < 5:
        raise ValueError("n_max must be at least 5")
    top = _max_index(spec)
    if top is not None:
        n_max = min(n_max, top)
    exact = spec.is_rational
    if slack is None:
        slack = 0.0 if exact else 1e-12
    violations = []
    ok1 = ok2 = True
    window = [x_value(spec, k) for k in (1, 2, 3, 4)]
    for n in range(0, n_max - 3):
        y1, y2, y3, y4 = window
        for name, sides in (("ineq1", _ineq1_sides), ("ineq2", _ineq2_sides)):
            lhs, rhs = sides(y1, y2, y3, y4)
            tol = 0 if exact else slack * max(abs(float(lhs)), abs(float(rhs)), 1.0)
            if not lhs > rhs - tol:
                violations.append((name, n, lhs, rhs))
                if name == "ineq1":
                    ok1 = False
                else:
                    ok2 = False
        if n + 5 <= n_max:
            window = window[1:] + [x_value(spec, n + 5)]
    return InequalityReport(ok1, ok2, tuple(violations))
