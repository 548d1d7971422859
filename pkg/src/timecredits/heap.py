"""Deterministic heap interpreter where every primitive carries an exact cost.

Programs are values of type Computation: running one on a heap either fails
or yields (value, new heap, cost), with cost the exact number of charged
steps.  Reference and per-cell array commands cost 1; whole-array commands
cost n + 1 for a size-n array; `ret` costs 1; `bind` and host-level control
flow are free.  Input heaps are never mutated: `run` works on a private copy,
so a failing run leaves no visible change.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import wraps
from typing import Any, Callable, Iterable, Union

REF = "ref"
ARRAY = "array"


@dataclass(frozen=True)
class Addr:
    """Opaque heap address.  Programs obtain these from allocation only."""

    index: int
    kind: str  # REF or ARRAY

    def __repr__(self) -> str:
        return f"{'r' if self.kind == REF else 'a'}{self.index}"


# Heap cells hold ints, bools, unit (None) or addresses.  Whole-array
# commands may additionally return tuples of these as computation results.
Value = Union[int, bool, None, Addr]


class Heap:
    """Finite maps for reference cells and arrays plus an allocation counter.

    The counter only grows, so addresses are never reused and the ref/array
    domains stay disjoint.
    """

    __slots__ = ("refs", "arrays", "next_addr")

    def __init__(self, refs=None, arrays=None, next_addr=0):
        self.refs: dict[int, Value] = refs if refs is not None else {}
        self.arrays: dict[int, list[Value]] = arrays if arrays is not None else {}
        self.next_addr: int = next_addr

    def clone(self) -> "Heap":
        return Heap(dict(self.refs), {k: list(v) for k, v in self.arrays.items()}, self.next_addr)

    def allocated(self) -> set[Addr]:
        out = {Addr(i, REF) for i in self.refs}
        out.update(Addr(i, ARRAY) for i in self.arrays)
        return out

    def wellformed(self) -> bool:
        if set(self.refs) & set(self.arrays):
            return False
        domain = list(self.refs) + list(self.arrays)
        return all(i < self.next_addr for i in domain)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Heap):
            return NotImplemented
        return (
            self.refs == other.refs
            and self.arrays == other.arrays
            and self.next_addr == other.next_addr
        )

    def __repr__(self) -> str:
        cells = [f"r{i}={v!r}" for i, v in sorted(self.refs.items())]
        cells += [f"a{i}={v!r}" for i, v in sorted(self.arrays.items())]
        return "Heap(" + ", ".join(cells) + f", next={self.next_addr})"


def empty_heap() -> Heap:
    return Heap()


class _Fail(Exception):
    """Internal signal; never escapes `run`."""


class _Ctx:
    __slots__ = ("heap", "cost", "trace")

    def __init__(self, heap: Heap, trace):
        self.heap = heap
        self.cost = 0
        self.trace = trace


class Computation:
    """A cost-instrumented program: Heap -> Failure | (value, heap, cost)."""

    __slots__ = ("_step",)

    def __init__(self, step: Callable[[_Ctx], Value]):
        self._step = step


@dataclass(frozen=True)
class Success:
    value: Any
    heap: Heap
    cost: int


class Failure:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Failure"


FAILURE = Failure()
Outcome = Union[Success, Failure]


def run(comp: Computation, heap: Heap) -> Outcome:
    """Run a computation on a copy of `heap`; the argument is left untouched."""
    ctx = _Ctx(heap.clone(), None)
    try:
        value = comp._step(ctx)
    except _Fail:
        return FAILURE
    return Success(value, ctx.heap, ctx.cost)


def run_traced(comp: Computation, heap: Heap) -> tuple[Outcome, tuple]:
    """Like `run` but also returns the (primitive, cost) charge trace."""
    ctx = _Ctx(heap.clone(), [])
    try:
        value = comp._step(ctx)
    except _Fail:
        return FAILURE, tuple(ctx.trace)
    return Success(value, ctx.heap, ctx.cost), tuple(ctx.trace)


def _charge(ctx: _Ctx, name: str, amount: int) -> None:
    ctx.cost += amount
    if ctx.trace is not None:
        ctx.trace.append((name, amount))


# ---------------------------------------------------------------------------
# primitives
# ---------------------------------------------------------------------------

def ret(v: Value) -> Computation:
    """Return a pure value; costs 1 step."""
    def step(ctx):
        _charge(ctx, "ret", 1)
        return v
    return Computation(step)


def bind(c: Computation, f: Callable[[Any], Computation]) -> Computation:
    """Sequence two computations; adds no cost of its own."""
    def step(ctx):
        v = c._step(ctx)
        return f(v)._step(ctx)
    return Computation(step)


def proc(genfn):
    """Write a computation as a generator yielding sub-computations.

    Each `yield comp` runs `comp` and evaluates to its result; the generator
    body itself (control flow, arithmetic) is free, mirroring `bind`.  The
    generator is re-created on every run, so the computation is a reusable
    value.
    """
    @wraps(genfn)
    def build(*args, **kwargs):
        def step(ctx):
            gen = genfn(*args, **kwargs)
            try:
                comp = next(gen)
                while True:
                    comp = gen.send(comp._step(ctx))
            except StopIteration as stop:
                return stop.value
        return Computation(step)
    return build


def _as_ref(ctx: _Ctx, a: Value) -> int:
    if not isinstance(a, Addr) or a.kind != REF or a.index not in ctx.heap.refs:
        raise _Fail()
    return a.index


def _as_array(ctx: _Ctx, a: Value) -> list[Value]:
    if not isinstance(a, Addr) or a.kind != ARRAY or a.index not in ctx.heap.arrays:
        raise _Fail()
    return ctx.heap.arrays[a.index]


def ref_new(v: Value) -> Computation:
    def step(ctx):
        _charge(ctx, "ref_new", 1)
        h = ctx.heap
        a = Addr(h.next_addr, REF)
        h.refs[a.index] = v
        h.next_addr += 1
        return a
    return Computation(step)


def ref_read(a: Value) -> Computation:
    def step(ctx):
        _charge(ctx, "ref_read", 1)
        return ctx.heap.refs[_as_ref(ctx, a)]
    return Computation(step)


def ref_write(a: Value, v: Value) -> Computation:
    def step(ctx):
        _charge(ctx, "ref_write", 1)
        ctx.heap.refs[_as_ref(ctx, a)] = v
        return None
    return Computation(step)


def array_len(a: Value) -> Computation:
    def step(ctx):
        _charge(ctx, "array_len", 1)
        return len(_as_array(ctx, a))
    return Computation(step)


def array_nth(a: Value, i: int) -> Computation:
    def step(ctx):
        _charge(ctx, "array_nth", 1)
        cells = _as_array(ctx, a)
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < len(cells):
            raise _Fail()
        return cells[i]
    return Computation(step)


def array_upd(a: Value, i: int, v: Value) -> Computation:
    def step(ctx):
        _charge(ctx, "array_upd", 1)
        cells = _as_array(ctx, a)
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < len(cells):
            raise _Fail()
        cells[i] = v
        return None
    return Computation(step)


def _alloc_array(ctx: _Ctx, cells: list[Value]) -> Addr:
    h = ctx.heap
    a = Addr(h.next_addr, ARRAY)
    h.arrays[a.index] = cells
    h.next_addr += 1
    return a


def array_new(n: int, x: Value) -> Computation:
    """Allocate [x, ..., x] of length n; costs n + 1."""
    def step(ctx):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise _Fail()
        _charge(ctx, "array_new", n + 1)
        return _alloc_array(ctx, [x] * n)
    return Computation(step)


def array_of_list(xs: Iterable[Value]) -> Computation:
    """Allocate an array holding xs; costs len(xs) + 1."""
    cells = list(xs)

    def step(ctx):
        _charge(ctx, "array_of_list", len(cells) + 1)
        return _alloc_array(ctx, list(cells))
    return Computation(step)


def array_to_list(a: Value) -> Computation:
    """Extract the whole array as a tuple; costs len + 1."""
    def step(ctx):
        cells = _as_array(ctx, a)
        _charge(ctx, "array_to_list", len(cells) + 1)
        return tuple(cells)
    return Computation(step)


def atake(k: int, a: Value) -> Computation:
    """Copy the first k cells into a fresh array; costs k + 1."""
    def step(ctx):
        cells = _as_array(ctx, a)
        if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= len(cells):
            raise _Fail()
        _charge(ctx, "atake", k + 1)
        return _alloc_array(ctx, cells[:k])
    return Computation(step)


def adrop(k: int, a: Value) -> Computation:
    """Copy the cells from position k on into a fresh array; costs (len - k) + 1."""
    def step(ctx):
        cells = _as_array(ctx, a)
        if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= len(cells):
            raise _Fail()
        _charge(ctx, "adrop", (len(cells) - k) + 1)
        return _alloc_array(ctx, cells[k:])
    return Computation(step)


def agrow(n: int, a: Value, fill: Value) -> Computation:
    """Copy a whole size-k array into a fresh array of length n >= k, padding
    with `fill`; costs k + 1 (a whole-array command on the source)."""
    def step(ctx):
        cells = _as_array(ctx, a)
        if not isinstance(n, int) or isinstance(n, bool) or n < len(cells):
            raise _Fail()
        _charge(ctx, "agrow", len(cells) + 1)
        return _alloc_array(ctx, cells + [fill] * (n - len(cells)))
    return Computation(step)
