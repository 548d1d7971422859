"""Theta-class calculus for polynomial-log bounds in one and two variables.

Classes are n^a (ln n)^b, or products of such in m and n under the product
filter (both variables large).  Sums of two-variable classes cover shapes
like m + n that no single product class expresses.  Inclusion is decided
exponent-wise; summation uses absorption; composition with a linear inner
function leaves the class unchanged.  Numeric Theta witnesses (constants
plus a threshold) are calibrated on one sample set and must re-verify on a
disjoint one, so a claimed class cannot be overfitted to its own samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union


@dataclass(frozen=True)
class PolyLog:
    """The function class n^power (ln n)^log_power; (0, 0) is the constants."""

    power: int
    log_power: int

    def value(self, n: float) -> float:
        return n ** self.power * math.log(n) ** self.log_power

    def render(self) -> str:
        if self.power == 0 and self.log_power == 0:
            return "1"
        parts = []
        if self.power == 1:
            parts.append("n")
        elif self.power:
            parts.append(f"n^{self.power}")
        if self.log_power == 1:
            parts.append("ln n")
        elif self.log_power:
            parts.append(f"ln^{self.log_power} n")
        return " ".join(parts)


@dataclass(frozen=True)
class PolyLog2:
    """m^a (ln m)^b * n^c (ln n)^d under the product filter."""

    m_power: int
    m_log: int
    n_power: int
    n_log: int

    def value(self, m: float, n: float) -> float:
        return (
            m ** self.m_power
            * math.log(m) ** self.m_log
            * n ** self.n_power
            * math.log(n) ** self.n_log
        )

    def render(self) -> str:
        if self == PolyLog2(0, 0, 0, 0):
            return "1"
        parts = []
        for var, p, lp in (("m", self.m_power, self.m_log), ("n", self.n_power, self.n_log)):
            if p == 1:
                parts.append(var)
            elif p:
                parts.append(f"{var}^{p}")
            if lp == 1:
                parts.append(f"ln {var}")
            elif lp:
                parts.append(f"ln^{lp} {var}")
        return " ".join(parts)


@dataclass(frozen=True)
class SumClass2:
    """A sum of two-variable classes, e.g. m + n or m^2 n + m n^2."""

    members: tuple[PolyLog2, ...]

    def value(self, m: float, n: float) -> float:
        return sum(g.value(m, n) for g in self.members)

    def render(self) -> str:
        return " + ".join(g.render() for g in self.members)


@dataclass(frozen=True)
class RealPowerClass:
    """n^p with a real exponent; display and witness checking only.

    Bottom-heavy recurrence solutions land here.  These classes take no
    part in the natural-exponent inclusion calculus.
    """

    exponent: float

    def value(self, n: float) -> float:
        return n ** self.exponent

    def render(self) -> str:
        return f"n^{self.exponent:.7f}"


TwoVarClass = Union[PolyLog2, SumClass2]
AnyClass = Union[PolyLog, PolyLog2, SumClass2, RealPowerClass]

CONSTANT = PolyLog(0, 0)


def sum_class2(members: Iterable[PolyLog2]) -> TwoVarClass:
    """Normalize a member list: drop dominated members, sort, unwrap singletons."""
    kept: list[PolyLog2] = []
    for g in members:
        if any(_cmp2(g, h) in (Rel.SUBSET, Rel.EQUAL) for h in kept):
            continue
        kept = [h for h in kept if _cmp2(h, g) != Rel.SUBSET]
        kept.append(g)
    kept.sort(key=lambda g: (g.m_power, g.m_log, g.n_power, g.n_log), reverse=True)
    if len(kept) == 1:
        return kept[0]
    return SumClass2(tuple(kept))


class Rel(Enum):
    SUBSET = "subset"
    SUPERSET = "superset"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def o_subset(g1: PolyLog, g2: PolyLog) -> bool:
    """O(g1) included in O(g2): lexicographic on (power, log power)."""
    return (g1.power, g1.log_power) <= (g2.power, g2.log_power)


def _cmp2(g1: PolyLog2, g2: PolyLog2) -> Rel:
    m_le = (g1.m_power, g1.m_log) <= (g2.m_power, g2.m_log)
    m_ge = (g1.m_power, g1.m_log) >= (g2.m_power, g2.m_log)
    n_le = (g1.n_power, g1.n_log) <= (g2.n_power, g2.n_log)
    n_ge = (g1.n_power, g1.n_log) >= (g2.n_power, g2.n_log)
    if m_le and n_le and m_ge and n_ge:
        return Rel.EQUAL
    if m_le and n_le:
        return Rel.SUBSET
    if m_ge and n_ge:
        return Rel.SUPERSET
    return Rel.INCOMPARABLE


def o_subset2(g1: PolyLog2, g2: PolyLog2) -> Rel:
    """Componentwise comparison; not all pairs are comparable."""
    return _cmp2(g1, g2)


def included2(g: TwoVarClass, h: TwoVarClass) -> bool:
    """O(g) included in O(h), two-variable, possibly sums.

    For a sum on the right it suffices that some member dominates; this is
    sound (the sum is at least each member) though not complete.
    """
    g_members = g.members if isinstance(g, SumClass2) else (g,)
    h_members = h.members if isinstance(h, SumClass2) else (h,)
    return all(
        any(_cmp2(gm, hm) in (Rel.SUBSET, Rel.EQUAL) for hm in h_members)
        for gm in g_members
    )


class IncomparableError(Exception):
    def __init__(self, left: TwoVarClass, right: TwoVarClass):
        self.pair = (left, right)
        super().__init__(
            f"no class dominates both {left.render()} and {right.render()}"
        )


def sum_theta(classes: Sequence[PolyLog]) -> PolyLog:
    """Absorption: the sum of classes is the dominant one."""
    if not classes:
        raise ValueError("empty class list")
    dominant = classes[0]
    for g in classes[1:]:
        if not o_subset(g, dominant):
            dominant = g
    return dominant


def sum_theta2(classes: Sequence[TwoVarClass]) -> TwoVarClass:
    """Absorption in two variables; fails when no member dominates the rest."""
    if not classes:
        raise ValueError("empty class list")
    for candidate in classes:
        if all(included2(g, candidate) for g in classes):
            return candidate
    # report a maximal incomparable pair
    maximal = []
    for g in classes:
        if not any(included2(g, h) and not included2(h, g) for h in classes):
            maximal.append(g)
    left = maximal[0]
    right = next(g for g in maximal[1:] if not included2(g, left) or not included2(left, g))
    raise IncomparableError(left, right)


# ---------------------------------------------------------------------------
# composition with linear inner functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearArg:
    """An inner argument alpha*n + beta with optional floor/ceil rounding of
    the scaled part; always Theta(n) since alpha = num/den > 0."""

    num: int = 1
    den: int = 1
    offset: int = 0
    rounding: str = "floor"

    def __post_init__(self):
        if self.num < 1 or self.den < 1:
            raise NonLinearArgument(f"inner function must scale by a positive ratio: {self}")
        if self.rounding not in ("floor", "ceil"):
            raise NonLinearArgument(f"unknown rounding {self.rounding!r}")

    def apply(self, n: int) -> int:
        scaled = self.num * n
        q = scaled // self.den if self.rounding == "floor" else -(-scaled // self.den)
        return q + self.offset

    def render(self) -> str:
        core = "n" if (self.num, self.den) == (1, 1) else f"{self.num}n/{self.den}"
        if self.offset > 0:
            return f"{core}+{self.offset}"
        if self.offset < 0:
            return f"{core}{self.offset}"
        return core


IDENTITY = LinearArg()


class NonLinearArgument(ValueError):
    """Composition is only admitted for linear inner functions."""


class UnknownFunction(KeyError):
    pass


def compose_linear(g: PolyLog, inner: LinearArg) -> PolyLog:
    """Composition rule: a polylog class after a Theta(n) inner function is
    unchanged.  Anything that is not a LinearArg is rejected outright."""
    if not isinstance(inner, LinearArg):
        raise NonLinearArgument(f"inner function {inner!r} is not linear")
    return g


# ---------------------------------------------------------------------------
# registry and the expression analyzer
# ---------------------------------------------------------------------------

DECLARED = "declared"
SOLVED = "solved-by-recurrence"


@dataclass
class RegistryEntry:
    name: str
    arity: int
    cls: Union[PolyLog, TwoVarClass]
    provenance: str = DECLARED
    witness: Optional["ThetaWitness"] = None


class BoundRegistry:
    """Named runtime functions mapped to their asymptotic classes."""

    def __init__(self):
        self.entries: dict[str, RegistryEntry] = {}

    def register(
        self,
        name: str,
        cls: Union[PolyLog, TwoVarClass],
        provenance: str = DECLARED,
        witness: Optional["ThetaWitness"] = None,
    ) -> None:
        arity = 1 if isinstance(cls, PolyLog) else 2
        self.entries[name] = RegistryEntry(name, arity, cls, provenance, witness)

    def lookup(self, name: str) -> RegistryEntry:
        if name not in self.entries:
            raise UnknownFunction(name)
        return self.entries[name]

    def save(self, path) -> None:
        lines = []
        for entry in self.entries.values():
            if isinstance(entry.cls, PolyLog):
                groups = [(entry.cls.power, entry.cls.log_power)]
                arity = 1
            else:
                members = (
                    entry.cls.members if isinstance(entry.cls, SumClass2) else (entry.cls,)
                )
                groups = [(g.m_power, g.m_log, g.n_power, g.n_log) for g in members]
                arity = 2
            for exps in groups:
                fields = [entry.name, str(arity), *map(str, exps), entry.provenance]
                lines.append(",".join(fields))
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path) -> "BoundRegistry":
        reg = cls()
        grouped: dict[str, tuple[str, int, list]] = {}
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                fields = line.split(",")
                name, arity = fields[0], int(fields[1])
                exps = tuple(int(x) for x in fields[2:-1])
                provenance = fields[-1]
                grouped.setdefault(name, (provenance, arity, []))[2].append(exps)
        for name, (provenance, arity, groups) in grouped.items():
            if arity == 1:
                (a, b), = groups
                reg.register(name, PolyLog(a, b), provenance)
            else:
                members = [PolyLog2(*g) for g in groups]
                reg.register(name, sum_class2(members), provenance)
        return reg


@dataclass(frozen=True)
class Term:
    """One summand of a single-variable runtime expression: a monomial
    factor n^power times at most one registry call on a linear argument."""

    power: int = 0
    call: Optional[str] = None
    arg: LinearArg = IDENTITY
    coeff: int = 1


@dataclass(frozen=True)
class Term2:
    """Two-variable summand: m^i n^j times at most one call.

    For a single-variable callee, `applied_to` says which variable feeds it;
    for a two-variable callee both inner arguments must be linear.
    """

    m_power: int = 0
    n_power: int = 0
    call: Optional[str] = None
    applied_to: str = "n"
    arg_m: LinearArg = IDENTITY
    arg_n: LinearArg = IDENTITY
    coeff: int = 1


def _shift2(cls: TwoVarClass, dm: int, dn: int) -> TwoVarClass:
    members = cls.members if isinstance(cls, SumClass2) else (cls,)
    shifted = [
        PolyLog2(g.m_power + dm, g.m_log, g.n_power + dn, g.n_log) for g in members
    ]
    return sum_class2(shifted)


def analyze_expr(
    terms: Sequence[Union[Term, Term2]], registry: BoundRegistry
) -> Union[PolyLog, TwoVarClass]:
    """Class of a sum of terms, by per-term classification plus absorption."""
    if not terms:
        raise ValueError("empty expression")
    if isinstance(terms[0], Term):
        classes = []
        for t in terms:
            if t.call is None:
                classes.append(PolyLog(t.power, 0))
                continue
            entry = registry.lookup(t.call)
            if entry.arity != 1:
                raise UnknownFunction(f"{t.call} is not a single-variable function")
            inner = compose_linear(entry.cls, t.arg)
            classes.append(PolyLog(t.power + inner.power, inner.log_power))
        return sum_theta(classes)

    classes2: list[TwoVarClass] = []
    for t in terms:
        if t.call is None:
            classes2.append(PolyLog2(t.m_power, 0, t.n_power, 0))
            continue
        entry = registry.lookup(t.call)
        if entry.arity == 1:
            base = compose_linear(entry.cls, t.arg_m if t.applied_to == "m" else t.arg_n)
            if t.applied_to == "m":
                cls: TwoVarClass = PolyLog2(base.power, base.log_power, 0, 0)
            else:
                cls = PolyLog2(0, 0, base.power, base.log_power)
        else:
            if not isinstance(t.arg_m, LinearArg) or not isinstance(t.arg_n, LinearArg):
                raise NonLinearArgument(f"{t.call} applied to a non-linear argument")
            cls = entry.cls
        classes2.append(_shift2(cls, t.m_power, t.n_power))
    return sum_theta2(classes2)


# ---------------------------------------------------------------------------
# numeric witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaWitness:
    """Constants certifying c_lower * g <= f <= c_upper * g from N on."""

    c_lower: Fraction
    c_upper: Fraction
    threshold: int

    def __post_init__(self):
        if self.c_lower <= 0 or self.c_upper <= 0:
            raise ValueError("witness constants must be positive")


@dataclass(frozen=True)
class WitnessReport:
    passed: bool
    violation: Optional[tuple] = None  # (sample, ratio, side)

    def describe(self) -> str:
        if self.passed:
            return "witness holds on all samples"
        sample, ratio, side = self.violation
        return f"witness violated at {sample}: ratio {ratio:.4g} breaks the {side} bound"


def _ratio(f_val: float, g_val: float) -> float:
    return f_val / g_val


def check_theta_witness(
    f: Callable,
    g: AnyClass,
    witness: ThetaWitness,
    samples: Sequence,
) -> WitnessReport:
    """Check both witness bounds at every sample at or above the threshold."""
    lo = float(witness.c_lower)
    hi = float(witness.c_upper)
    for sample in samples:
        if isinstance(sample, tuple):
            if min(sample) < witness.threshold:
                raise ValueError(f"sample {sample} below witness threshold {witness.threshold}")
            ratio = _ratio(float(f(*sample)), g.value(*sample))
        else:
            if sample < witness.threshold:
                raise ValueError(f"sample {sample} below witness threshold {witness.threshold}")
            ratio = _ratio(float(f(sample)), g.value(sample))
        if ratio > hi:
            return WitnessReport(False, (sample, ratio, "upper"))
        if ratio < lo:
            return WitnessReport(False, (sample, ratio, "lower"))
    return WitnessReport(True)


def calibrate_witness(
    f: Callable,
    g: AnyClass,
    train_samples: Sequence,
    margin: float = 0.10,
) -> ThetaWitness:
    """Fit witness constants on training samples with a fixed slack margin.

    The point of the margin is that verification happens on a disjoint,
    larger sample set: a wrong class drifts past the margin there.
    """
    ratios = []
    threshold = None
    for sample in train_samples:
        if isinstance(sample, tuple):
            point = min(sample)
            ratios.append(_ratio(float(f(*sample)), g.value(*sample)))
        else:
            point = sample
            ratios.append(_ratio(float(f(sample)), g.value(sample)))
        threshold = point if threshold is None else min(threshold, point)
    if threshold is None:
        raise ValueError("no training samples")
    if threshold < 2:
        raise ValueError("witness thresholds start at 2 (ln 1 = 0)")
    lo = min(ratios) * (1 - margin)
    hi = max(ratios) * (1 + margin)
    if lo <= 0:
        raise ValueError("function vanishes on a training sample")
    return ThetaWitness(
        Fraction(lo).limit_denominator(10**9),
        Fraction(hi).limit_denominator(10**9),
        threshold,
    )


def geometric_samples(lo: int, hi: int, per_decade: int = 4) -> list[int]:
    """Distinct integer samples spread geometrically across [lo, hi]."""
    if lo < 2:
        raise ValueError("samples start at 2")
    out = []
    x = float(lo)
    step = 2 ** (1.0 / per_decade)
    while x <= hi:
        n = round(x)
        if not out or n > out[-1]:
            out.append(n)
        x *= step
    if out[-1] != hi:
        out.append(hi)
    return out


def grid_samples(lo: int, hi: int, per_side: int = 6) -> list[tuple[int, int]]:
    side = geometric_samples(lo, hi, per_decade=max(1, per_side // 2))
    return [(m, n) for m in side for n in side]
