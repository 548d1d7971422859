"""Divide-and-conquer recurrence solving plus a concrete evaluation oracle.

A recurrence f(x) = g(x) + sum of a_i * f(h_i(x)) for x >= x0, with each
h_i(x) the ceiling or floor of b_i * x (0 < b_i < 1), is classified through
its characteristic exponent p, the root of sum a_i * b_i^p = 1.  Whether g
grows below, at, or above x^p picks a bottom-heavy, balanced, or top-heavy
solution.  When the recurrence additionally carries a concrete toll
function and base table, `eval_recurrence` computes exact values, which the
ratio check uses to keep the symbolic answer honest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .landau import PolyLog, PolyLog2, RealPowerClass, geometric_samples

BOTTOM_HEAVY = "bottom-heavy"
BALANCED = "balanced"
TOP_HEAVY = "top-heavy"

BALANCED_TOLERANCE = 1e-6
ROOT_TOLERANCE = 1e-9
BRACKET = (-32.0, 32.0)


class RecurrenceError(ValueError):
    pass


class RootOutOfRange(RecurrenceError):
    pass


class MissingBase(RecurrenceError):
    pass


@dataclass(frozen=True)
class RecTerm:
    a: Fraction
    b: Fraction
    rounding: str = "ceil"

    def __post_init__(self):
        if not 0 < self.b < 1:
            raise RecurrenceError(f"b must lie strictly between 0 and 1, got {self.b}")
        if self.a < 0:
            raise RecurrenceError(f"a must be nonnegative, got {self.a}")
        if self.rounding not in ("ceil", "floor"):
            raise RecurrenceError(f"unknown rounding {self.rounding!r}")

    def recurse_on(self, x: int) -> int:
        scaled = self.b.numerator * x
        if self.rounding == "floor":
            return scaled // self.b.denominator
        return -(-scaled // self.b.denominator)


@dataclass
class AkraBazziSpec:
    """Recurrence description: threshold, recursive terms, toll class, and
    (optionally) a concrete toll plus base table for exact evaluation."""

    x0: int
    terms: tuple[RecTerm, ...]
    g_class: PolyLog
    g_concrete: Optional[Callable[[int], int]] = None
    base: dict[int, int] = field(default_factory=dict)
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.terms = tuple(self.terms)
        if not any(t.a > 0 for t in self.terms):
            raise RecurrenceError("at least one recursive term must have a > 0")
        if self.x0 < 1:
            raise RecurrenceError("threshold x0 must be at least 1")


@dataclass(frozen=True)
class AkraBazziResult:
    p: float
    case: str
    result_class: Union[PolyLog, RealPowerClass]
    residual: float

    def render(self) -> str:
        return f"p={self.p:.7f} ({self.case}), Theta({self.result_class.render()})"


def _phi(spec: AkraBazziSpec, p: float) -> float:
    return sum(float(t.a) * float(t.b) ** p for t in spec.terms) - 1.0


def solve_exponent(spec: AkraBazziSpec) -> float:
    """Root of sum a_i b_i^p = 1 by bisection; the function is strictly
    decreasing in p, so the root is unique."""
    lo, hi = BRACKET
    f_lo, f_hi = _phi(spec, lo), _phi(spec, hi)
    if f_lo < 0 or f_hi > 0:
        raise RootOutOfRange(
            f"no sign change on [{lo}, {hi}]: phi({lo})={f_lo:.3g}, phi({hi})={f_hi:.3g}"
        )
    while hi - lo > ROOT_TOLERANCE:
        mid = 0.5 * (lo + hi)
        if _phi(spec, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def akra_bazzi_class(spec: AkraBazziSpec) -> AkraBazziResult:
    p = solve_exponent(spec)
    residual = abs(_phi(spec, p))
    q, logs = spec.g_class.power, spec.g_class.log_power
    if abs(q - p) <= BALANCED_TOLERANCE:
        return AkraBazziResult(p, BALANCED, PolyLog(q, logs + 1), residual)
    if logs != 0:
        raise RecurrenceError(
            "toll with log factors must sit exactly at the exponent "
            f"(q={q}, p={p:.6f})"
        )
    if q < p:
        if spec.g_concrete is not None:
            _check_eventually_positive(spec)
        return AkraBazziResult(p, BOTTOM_HEAVY, RealPowerClass(p), residual)
    return AkraBazziResult(p, TOP_HEAVY, spec.g_class, residual)


def _check_eventually_positive(spec: AkraBazziSpec) -> None:
    # bottom-heavy hypothesis: f stays positive over the checkable range
    probe = [spec.x0, spec.x0 + 1, 4 * spec.x0, 64 * spec.x0, 1024 * spec.x0]
    for n in probe:
        if eval_recurrence(spec, n) <= 0:
            raise RecurrenceError(f"f({n}) is not positive")


def eval_recurrence(spec: AkraBazziSpec, n: int):
    """Exact memoized evaluation following the declared rounding."""
    if spec.g_concrete is None:
        raise RecurrenceError("spec has no concrete toll function")
    memo = spec._memo
    if n in memo:
        return memo[n]
    if n < spec.x0:
        if n not in spec.base:
            raise MissingBase(f"no base value for n={n} below threshold {spec.x0}")
        memo[n] = spec.base[n]
        return memo[n]
    total = spec.g_concrete(n)
    for term in spec.terms:
        if term.a == 0:
            continue
        sub = eval_recurrence(spec, term.recurse_on(n))
        contribution = term.a * sub
        total = total + contribution
    if isinstance(total, Fraction) and total.denominator == 1:
        total = int(total)
    memo[n] = total
    return total


def eval_range(spec: AkraBazziSpec, hi: int) -> list:
    """Evaluate f on 0..hi ascending (keeps the recursion shallow)."""
    return [eval_recurrence(spec, n) for n in range(hi + 1)]


@dataclass(frozen=True)
class RatioReport:
    min_ratio: float
    max_ratio: float
    slack: float
    passed: bool

    def render(self) -> str:
        verdict = "pass" if self.passed else "fail"
        return (
            f"ratio in [{self.min_ratio:.4g}, {self.max_ratio:.4g}], "
            f"spread {self.max_ratio / self.min_ratio:.3g} vs slack {self.slack:g}: {verdict}"
        )


def empirical_ratio_check(
    spec: AkraBazziSpec,
    result_class,
    lo: int,
    hi: int,
    slack: Optional[float] = None,
) -> RatioReport:
    """Compare exact values of f against the claimed class over a geometric
    sample; the ratio spread must stay within the slack factor."""
    if slack is None:
        slack = 8.0 if getattr(result_class, "log_power", 0) > 0 else 4.0
    ratios = []
    for n in geometric_samples(max(lo, 2), hi):
        value = eval_recurrence(spec, n)
        ratios.append(float(value) / result_class.value(n))
    min_ratio, max_ratio = min(ratios), max(ratios)
    passed = min_ratio > 0 and max_ratio / min_ratio <= slack
    return RatioReport(min_ratio, max_ratio, slack, passed)


# ---------------------------------------------------------------------------
# linear recurrences (for-loops written as recursions)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearRecSpec:
    """f(n+1) = f(n) + g(n) in one variable, or f(n+1, m) = f(n, m) + g(m)
    with constant-bounded f(0, m) in two."""

    arity: int
    g_class: PolyLog
    base_bound: int = 0


def linear_rec_class(spec: LinearRecSpec) -> Union[PolyLog, PolyLog2]:
    if spec.arity == 1:
        return PolyLog(spec.g_class.power + 1, spec.g_class.log_power)
    if spec.arity == 2:
        if spec.g_class != PolyLog(1, 0):
            raise RecurrenceError(
                "two-variable rule requires a linear step, got "
                f"Theta({spec.g_class.render()})"
            )
        return PolyLog2(1, 0, 1, 0)
    raise RecurrenceError(f"unsupported arity {spec.arity}")


# ---------------------------------------------------------------------------
# file format (exact rationals as "p/q" strings)
# ---------------------------------------------------------------------------

def spec_to_json(spec: AkraBazziSpec) -> dict:
    return {
        "name": spec.name,
        "x0": spec.x0,
        "terms": [
            {"a": str(t.a), "b": str(t.b), "round": t.rounding} for t in spec.terms
        ],
        "g_class": [spec.g_class.power, spec.g_class.log_power],
        "g_poly": None,
        "base": {str(k): v for k, v in spec.base.items()},
    }


def _poly_fn(coeffs: dict) -> Callable[[int], int]:
    pairs = [(int(p), int(c)) for p, c in coeffs.items()]

    def g(n: int) -> int:
        return sum(c * n ** p for p, c in pairs)

    return g


def spec_from_json(data: dict) -> AkraBazziSpec:
    terms = tuple(
        RecTerm(Fraction(t["a"]), Fraction(t["b"]), t.get("round", "ceil"))
        for t in data["terms"]
    )
    g_power, g_log = data["g_class"]
    g_concrete = None
    if data.get("g_poly"):
        # polynomial toll: {"0": c0, "1": c1, ...} maps power -> coefficient
        g_concrete = _poly_fn(data["g_poly"])
    base = {int(k): int(v) for k, v in data.get("base", {}).items()}
    return AkraBazziSpec(
        x0=int(data["x0"]),
        terms=terms,
        g_class=PolyLog(int(g_power), int(g_log)),
        g_concrete=g_concrete,
        base=base,
        name=data.get("name", ""),
    )


def load_spec(path) -> AkraBazziSpec:
    with open(path) as fh:
        return spec_from_json(json.load(fh))


def save_spec(spec: AkraBazziSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(spec_to_json(spec), fh, indent=2)
        fh.write("\n")
