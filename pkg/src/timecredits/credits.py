"""Symbolic time expressions, polynomial normalization, and credit matching.

Time expressions are sums of natural-coefficient terms over atoms: the
constant 1, size variables, div/ceil/floor forms of linear expressions, and
applications of named runtime functions.  `normalize` flattens an expression
into a coefficient map; `subtract_match` decides T = T' + T'' by sequential
term subtraction, comparing atoms up to a supplied equality set (congruence
closure); `apply_hint` replaces a term s by a certified smaller t, marking
the result as upper-bound-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Union


# ---------------------------------------------------------------------------
# argument expressions (what runtime functions are applied to)
# ---------------------------------------------------------------------------

class ArgExpr:
    __slots__ = ()


@dataclass(frozen=True)
class VarE(ArgExpr):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class ConstE(ArgExpr):
    value: int

    def __repr__(self):
        return str(self.value)


@dataclass(frozen=True)
class AddE(ArgExpr):
    left: ArgExpr
    right: ArgExpr

    def __repr__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class SubE(ArgExpr):
    left: ArgExpr
    right: ArgExpr

    def __repr__(self):
        return f"({self.left} - {self.right})"


@dataclass(frozen=True)
class MulE(ArgExpr):
    factor: int
    inner: ArgExpr

    def __repr__(self):
        return f"{self.factor}*{self.inner}"


@dataclass(frozen=True)
class FloorDivE(ArgExpr):
    inner: ArgExpr
    divisor: int

    def __repr__(self):
        return f"({self.inner} div {self.divisor})"


@dataclass(frozen=True)
class CeilDivE(ArgExpr):
    inner: ArgExpr
    divisor: int

    def __repr__(self):
        return f"ceil({self.inner}/{self.divisor})"


def eval_arg(e: ArgExpr, env: Mapping[str, int]) -> int:
    if isinstance(e, VarE):
        return env[e.name]
    if isinstance(e, ConstE):
        return e.value
    if isinstance(e, AddE):
        return eval_arg(e.left, env) + eval_arg(e.right, env)
    if isinstance(e, SubE):
        value = eval_arg(e.left, env) - eval_arg(e.right, env)
        if value < 0:
            raise ValueError(f"argument {e!r} evaluates below zero")
        return value
    if isinstance(e, MulE):
        return e.factor * eval_arg(e.inner, env)
    if isinstance(e, FloorDivE):
        return eval_arg(e.inner, env) // e.divisor
    if isinstance(e, CeilDivE):
        return -(-eval_arg(e.inner, env) // e.divisor)
    raise TypeError(f"unknown argument expression {e!r}")


def _arg_children(e: ArgExpr) -> tuple:
    if isinstance(e, (VarE, ConstE)):
        return ()
    if isinstance(e, (AddE, SubE)):
        return (e.left, e.right)
    if isinstance(e, (MulE, FloorDivE, CeilDivE)):
        return (e.inner,)
    raise TypeError(f"unknown argument expression {e!r}")


def _arg_label(e: ArgExpr):
    if isinstance(e, VarE):
        return ("var", e.name)
    if isinstance(e, ConstE):
        return ("const", e.value)
    if isinstance(e, AddE):
        return ("add",)
    if isinstance(e, SubE):
        return ("sub",)
    if isinstance(e, MulE):
        return ("mul", e.factor)
    if isinstance(e, FloorDivE):
        return ("fdiv", e.divisor)
    if isinstance(e, CeilDivE):
        return ("cdiv", e.divisor)
    raise TypeError(f"unknown argument expression {e!r}")


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------

class TimeAtom:
    __slots__ = ()


@dataclass(frozen=True)
class UnitAtom(TimeAtom):
    """The constant term 1."""

    def __repr__(self):
        return "1"


@dataclass(frozen=True)
class VarAtom(TimeAtom):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class ExprAtom(TimeAtom):
    """A div/ceil/floor linear form used directly as a term (e.g. n div 2)."""

    expr: ArgExpr

    def __repr__(self):
        return repr(self.expr)


@dataclass(frozen=True)
class CallAtom(TimeAtom):
    fn: str
    args: tuple[ArgExpr, ...]

    def __repr__(self):
        return f"{self.fn}({', '.join(map(repr, self.args))})"


UNIT = UnitAtom()


class Assignment:
    """Values for variables plus implementations for named runtime functions."""

    def __init__(self, env: Mapping[str, int], funcs: Mapping[str, Callable] = ()):
        self.env = dict(env)
        self.funcs = dict(funcs) if funcs else {}

    def atom_value(self, atom: TimeAtom) -> int:
        if isinstance(atom, UnitAtom):
            return 1
        if isinstance(atom, VarAtom):
            return self.env[atom.name]
        if isinstance(atom, ExprAtom):
            return eval_arg(atom.expr, self.env)
        if isinstance(atom, CallAtom):
            args = [eval_arg(a, self.env) for a in atom.args]
            return self.funcs[atom.fn](*args)
        raise TypeError(f"unknown atom {atom!r}")


# ---------------------------------------------------------------------------
# time expressions and normalization
# ---------------------------------------------------------------------------

class TimeExpr:
    __slots__ = ()

    def __add__(self, other):
        return SumT((self, _coerce(other)))

    def __radd__(self, other):
        return SumT((_coerce(other), self))

    def __rmul__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise NormalizationError("coefficients must be naturals")
        return ScaleT(k, self)


@dataclass(frozen=True)
class LitT(TimeExpr):
    value: int


@dataclass(frozen=True)
class AtomT(TimeExpr):
    atom: TimeAtom


@dataclass(frozen=True)
class SumT(TimeExpr):
    parts: tuple


@dataclass(frozen=True)
class ScaleT(TimeExpr):
    factor: int
    inner: TimeExpr


def _coerce(x) -> TimeExpr:
    if isinstance(x, TimeExpr):
        return x
    if isinstance(x, int):
        if x < 0:
            raise NormalizationError("subtraction is outside the fragment")
        return LitT(x)
    raise NormalizationError(f"cannot use {x!r} in a time expression")


def t_lit(n: int) -> TimeExpr:
    return _coerce(n)


def t_var(name: str) -> TimeExpr:
    return AtomT(VarAtom(name))


def t_expr(e: ArgExpr) -> TimeExpr:
    return AtomT(ExprAtom(e))


def t_call(fn: str, *args: ArgExpr) -> TimeExpr:
    return AtomT(CallAtom(fn, tuple(args)))


class NormalizationError(ValueError):
    """Raised for expressions outside the sum-of-scaled-atoms fragment."""


def _atom_key(atom: TimeAtom):
    # canonical display order: named calls, then variables/expressions, then 1
    if isinstance(atom, CallAtom):
        return (0, repr(atom))
    if isinstance(atom, (VarAtom, ExprAtom)):
        return (1, repr(atom))
    return (2, "")


class PolyForm:
    """Normalized time expression: a finite map atom -> natural coefficient."""

    __slots__ = ("coeffs", "absorbing")

    def __init__(self, coeffs: Mapping[TimeAtom, int] = (), absorbing: bool = False):
        self.coeffs: dict[TimeAtom, int] = {
            a: c for a, c in dict(coeffs).items() if c != 0
        }
        self.absorbing = absorbing  # True once credits were discarded by a hint

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"PolyForm({self.render()})"

    def items_canonical(self) -> list[tuple[TimeAtom, int]]:
        return sorted(self.coeffs.items(), key=lambda kv: _atom_key(kv[0]))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for atom, coeff in self.items_canonical():
            if isinstance(atom, UnitAtom):
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(repr(atom))
            else:
                parts.append(f"{coeff}*{atom!r}")
        return " + ".join(parts)

    def eval(self, assignment: Assignment) -> int:
        return sum(c * assignment.atom_value(a) for a, c in self.coeffs.items())

    def copy(self, absorbing: Optional[bool] = None) -> "PolyForm":
        return PolyForm(dict(self.coeffs), self.absorbing if absorbing is None else absorbing)

    def add(self, other: "PolyForm") -> "PolyForm":
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0) + c
        return PolyForm(out, self.absorbing or other.absorbing)


def normalize(expr: Union[TimeExpr, int]) -> PolyForm:
    """Flatten a time expression into its unique coefficient map."""
    coeffs: dict[TimeAtom, int] = {}

    def walk(e: TimeExpr, scale: int):
        if isinstance(e, LitT):
            if e.value:
                coeffs[UNIT] = coeffs.get(UNIT, 0) + scale * e.value
        elif isinstance(e, AtomT):
            coeffs[e.atom] = coeffs.get(e.atom, 0) + scale
        elif isinstance(e, SumT):
            for part in e.parts:
                walk(part, scale)
        elif isinstance(e, ScaleT):
            if e.factor < 0:
                raise NormalizationError("coefficients must be naturals")
            if isinstance(e.inner, ScaleT) and not isinstance(e.inner.inner, (AtomT, LitT)):
                raise NormalizationError("nested non-linear products are outside the fragment")
            walk(e.inner, scale * e.factor)
        else:
            raise NormalizationError(f"cannot normalize {e!r}")

    walk(_coerce(expr), 1)
    return PolyForm(coeffs)


# ---------------------------------------------------------------------------
# congruence closure over atoms and argument expressions
# ---------------------------------------------------------------------------

class _Congruence:
    """Closure of a finite equation set over the terms occurring in it plus
    any terms later queried; equality is structural plus the equations."""

    def __init__(self, equations: Iterable[tuple] = ()):
        self.parent: dict = {}
        self.pending = [tuple(eq) for eq in equations]
        for lhs, rhs in self.pending:
            self._register(lhs)
            self._register(rhs)
        for lhs, rhs in self.pending:
            self._union(lhs, rhs)
        self._close()

    def _node(self, term):
        if isinstance(term, TimeAtom):
            if isinstance(term, CallAtom):
                return ("call", term.fn, tuple(self.find(a) for a in term.args))
            return term
        return term

    def _register(self, term):
        if term in self.parent:
            return
        self.parent[term] = term
        if isinstance(term, CallAtom):
            for a in term.args:
                self._register(a)
        elif isinstance(term, ExprAtom):
            self._register(term.expr)
        elif isinstance(term, ArgExpr):
            for child in _arg_children(term):
                self._register(child)

    def find(self, term):
        self._register(term)
        root = term
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[term] != root:
            self.parent[term], term = root, self.parent[term]
        return root

    def _union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def _signature(self, term):
        if isinstance(term, CallAtom):
            return ("call", term.fn, tuple(self.find(a) for a in term.args))
        if isinstance(term, ExprAtom):
            return ("expratom", self.find(term.expr))
        if isinstance(term, ArgExpr):
            return (_arg_label(term), tuple(self.find(c) for c in _arg_children(term)))
        return None

    def _close(self):
        # propagate congruence: equal children force equal parents
        changed = True
        while changed:
            changed = False
            by_sig: dict = {}
            for term in list(self.parent):
                sig = self._signature(term)
                if sig is None:
                    continue
                if sig in by_sig:
                    if self.find(by_sig[sig]) != self.find(term):
                        self._union(by_sig[sig], term)
                        changed = True
                else:
                    by_sig[sig] = term

    def equal(self, a, b) -> bool:
        if a == b:
            return True
        self._register(a)
        self._register(b)
        self._close()
        return self.find(a) == self.find(b)


# ---------------------------------------------------------------------------
# matching and hints
# ---------------------------------------------------------------------------

class MatchFailure(Exception):
    def __init__(self, term: TimeAtom, coeff: int, candidates: list):
        self.term = term
        self.coeff = coeff
        self.candidates = candidates
        shown = ", ".join(f"{c}*{a!r}" for a, c in candidates) or "nothing left"
        super().__init__(f"no match for {coeff}*{term!r}; remainder holds {shown}")


def subtract_match(
    total: PolyForm, demand: PolyForm, equations: Iterable[tuple] = ()
) -> PolyForm:
    """Decide total = demand + remainder; returns the remainder.

    Demand terms are processed in canonical order; each must find a
    congruent atom in the running remainder with a coefficient at least as
    large, by the supplied equality set.
    """
    congruence = _Congruence(equations)
    remainder = dict(total.coeffs)
    for atom, want in demand.items_canonical():
        matched = None
        for cand, have in sorted(remainder.items(), key=lambda kv: _atom_key(kv[0])):
            if have >= want and congruence.equal(cand, atom):
                matched = cand
                break
        if matched is None:
            raise MatchFailure(atom, want, sorted(remainder.items(), key=lambda kv: _atom_key(kv[0])))
        remainder[matched] -= want
        if remainder[matched] == 0:
            del remainder[matched]
    return PolyForm(remainder, total.absorbing)


class HintUnprovable(Exception):
    pass


class HintAbsent(Exception):
    pass


@dataclass
class Hint:
    """Replace the term `s` by the certified-smaller `t` in a credit budget.

    `justification` must return True to certify s >= t for the instance at
    hand; it is consulted every time the hint is applied.
    """

    s: TimeAtom
    t: PolyForm
    justification: Callable[[], bool]
    note: str = ""


def apply_hint(total: PolyForm, hint: Hint) -> PolyForm:
    if not hint.justification():
        raise HintUnprovable(f"could not certify {hint.s!r} >= {hint.t.render()}")
    if total.coeffs.get(hint.s, 0) < 1:
        raise HintAbsent(f"{hint.s!r} does not occur in {total.render()}")
    out = dict(total.coeffs)
    out[hint.s] -= 1
    if out[hint.s] == 0:
        del out[hint.s]
    result = PolyForm(out).add(hint.t)
    return result.copy(absorbing=True)


class MonotoneTable:
    """Certifies f(x) >= f(y) for x >= y by checking that the tabulated f is
    monotone up to a bound; outside the table it falls back to evaluation."""

    def __init__(self, fn: Callable[[int], int], bound: int):
        self.fn = fn
        self.bound = bound
        values = [fn(i) for i in range(bound + 1)]
        self.monotone = all(values[i] <= values[i + 1] for i in range(bound))

    def certify(self, x: int, y: int) -> bool:
        if x <= self.bound and y <= self.bound and self.monotone:
            return y <= x
        return self.fn(x) >= self.fn(y)


def numeric_ge(fn: Callable[[int], int], x: int, y: int) -> Callable[[], bool]:
    """Justification by direct evaluation at a concrete instance."""
    return lambda: fn(x) >= fn(y)
