"""One bundle per case study: instrumented run, bound, derived class claim,
credit obligations, and fault-injection variants.

The asymptotic claim of a bundle is always recomputed from its runtime
function through the recurrence or linear-loop rules; nothing is asserted
by hand.  Obligations feed the credit matcher; the declared hint counts
are part of the contract (only binary search and selection carry one).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from ..amortized import run_sequence
from ..credits import HintAbsent, HintUnprovable, MatchFailure, apply_hint, subtract_match
from ..heap import FAILURE, Success, array_of_list, empty_heap, run
from ..landau import (
    BoundRegistry,
    PolyLog,
    PolyLog2,
    SOLVED,
    calibrate_witness,
    check_theta_witness,
    geometric_samples,
    grid_samples,
)
from ..recurrence import akra_bazzi_class, empirical_ratio_check, linear_rec_class
from . import dynarray as dyn
from . import karatsuba as kara
from . import knapsack as knap
from . import search as srch
from . import select as sel
from . import skew_heap as skew
from . import sorting as srt
from . import splay_tree as spl


@dataclass(frozen=True)
class RunResult:
    output: Any
    cost: int
    size: int
    ok: bool


@dataclass
class DischargeReport:
    obligation: str
    success: bool
    hints_used: int
    detail: str = ""


@dataclass
class AlgorithmBundle:
    name: str
    gen_input: Callable[[random.Random, int], Any]
    run: Callable[[Any], RunResult]
    bound: Callable[[int], int]
    claim: Callable[[], Any]
    obligations: Callable[[], list]
    declared_hints: int
    consts: dict
    with_consts: Callable[[dict], "AlgorithmBundle"]
    tight_inputs: Callable[[], list] = lambda: []
    class_check: Callable[[], bool] = lambda: True
    class_fault_check: Callable[[Any], bool] = lambda cls: True


def discharge_obligation(entry) -> DischargeReport:
    """Try the plain subtraction first; only on failure apply the declared
    hints and retry, reporting how many were needed."""
    name, total, demand, equations, hints = entry
    try:
        subtract_match(total, demand, equations)
        return DischargeReport(name, True, 0)
    except MatchFailure as direct_failure:
        if not hints:
            return DischargeReport(name, False, 0, str(direct_failure))
    try:
        working = total
        for hint in hints:
            working = apply_hint(working, hint)
        subtract_match(working, demand, equations)
        return DischargeReport(name, True, len(hints))
    except (MatchFailure, HintAbsent, HintUnprovable) as exc:
        return DischargeReport(name, False, len(hints), str(exc))


def discharge_all(bundle: AlgorithmBundle) -> list[DischargeReport]:
    return [discharge_obligation(entry) for entry in bundle.obligations()]


def _heap_array(values):
    out = run(array_of_list(list(values)), empty_heap())
    return out.value, out.heap


# ---------------------------------------------------------------------------
# the nine bundles
# ---------------------------------------------------------------------------

def merge_sort_bundle(consts=srt.MERGE_SORT_CONSTS) -> AlgorithmBundle:
    def run_one(xs) -> RunResult:
        addr, heap = _heap_array(xs)
        out = run(srt.merge_sort_impl(addr), heap)
        assert isinstance(out, Success)
        got = out.heap.arrays[addr.index]
        return RunResult(got, out.cost, len(xs), got == sorted(xs))

    def claim():
        return akra_bazzi_class(srt.merge_sort_recurrence(consts)).result_class

    def class_check() -> bool:
        spec = srt.merge_sort_recurrence(consts)
        result = akra_bazzi_class(spec)
        if result.case != "balanced" or result.result_class != PolyLog(1, 1):
            return False
        if not empirical_ratio_check(spec, result.result_class, 2 ** 8, 2 ** 20).passed:
            return False
        return _witness_ok(lambda n: srt.merge_sort_time(n, consts), result.result_class)

    def class_fault_check(cls) -> bool:
        return _witness_ok(lambda n: srt.merge_sort_time(n, consts), cls)

    return AlgorithmBundle(
        name="merge_sort",
        gen_input=lambda rng, n: [rng.randrange(-(10**6), 10**6) for _ in range(n)],
        run=run_one,
        bound=lambda n: srt.merge_sort_time(n, consts),
        claim=claim,
        obligations=lambda: srt.merge_sort_obligations(consts),
        declared_hints=0,
        consts=dict(consts),
        with_consts=lambda c: merge_sort_bundle(c),
        tight_inputs=lambda: [srt.merge_sort_worst_input(n) for n in (0, 1, 2, 3, 8, 21)],
        class_check=class_check,
        class_fault_check=class_fault_check,
    )


def insertion_sort_bundle(consts=srt.INSERTION_SORT_CONSTS) -> AlgorithmBundle:
    def run_one(xs) -> RunResult:
        addr, heap = _heap_array(xs)
        out = run(srt.insertion_sort_impl(addr), heap)
        assert isinstance(out, Success)
        got = out.heap.arrays[addr.index]
        return RunResult(got, out.cost, len(xs), got == sorted(xs))

    def claim():
        return linear_rec_class(srt.insertion_sort_linear_rec(consts))

    def class_check() -> bool:
        if claim() != PolyLog(2, 0):
            return False
        return _witness_ok(lambda n: srt.insertion_sort_time(n, consts), PolyLog(2, 0))

    return AlgorithmBundle(
        name="insertion_sort",
        gen_input=lambda rng, n: [rng.randrange(-(10**6), 10**6) for _ in range(n)],
        run=run_one,
        bound=lambda n: srt.insertion_sort_time(n, consts),
        claim=claim,
        obligations=lambda: srt.insertion_sort_obligations(consts),
        declared_hints=0,
        consts=dict(consts),
        with_consts=lambda c: insertion_sort_bundle(c),
        tight_inputs=lambda: [list(range(n, 0, -1)) for n in (0, 1, 2, 3, 8, 16)],
        class_check=class_check,
        class_fault_check=lambda cls: _witness_ok(
            lambda n: srt.insertion_sort_time(n, consts), cls
        ),
    )


def binary_search_bundle(consts=srch.BINARY_SEARCH_CONSTS) -> AlgorithmBundle:
    def run_one(case) -> RunResult:
        xs, key = case
        addr, heap = _heap_array(xs)
        out = run(srch.binary_search_impl(addr, key), heap)
        assert isinstance(out, Success)
        pos = out.value
        ok = (key not in xs) if pos is None else (0 <= pos < len(xs) and xs[pos] == key)
        return RunResult(pos, out.cost, len(xs), ok)

    def gen(rng, n):
        xs = sorted(rng.randrange(-3 * n - 4, 3 * n + 4) for _ in range(n))
        key = rng.choice(xs) if xs and rng.random() < 0.5 else rng.randrange(-3 * n - 5, 3 * n + 5)
        return (xs, key)

    def claim():
        return akra_bazzi_class(srch.bsearch_recurrence(consts)).result_class

    def class_check() -> bool:
        result = akra_bazzi_class(srch.bsearch_recurrence(consts))
        if result.case != "balanced" or result.result_class != PolyLog(0, 1):
            return False
        return _witness_ok(lambda n: srch.binary_search_time(n, consts), PolyLog(0, 1))

    return AlgorithmBundle(
        name="binary_search",
        gen_input=gen,
        run=run_one,
        bound=lambda n: srch.binary_search_time(n, consts),
        claim=claim,
        obligations=lambda: srch.binary_search_obligations(consts),
        declared_hints=1,
        consts=dict(consts),
        with_consts=lambda c: binary_search_bundle(c),
        tight_inputs=lambda: [([], 0), ([5], 3), ([1, 3], 0)],
        class_check=class_check,
        class_fault_check=lambda cls: _witness_ok(
            lambda n: srch.binary_search_time(n, consts), cls
        ),
    )


def karatsuba_bundle(consts=kara.KARATSUBA_CONSTS) -> AlgorithmBundle:
    def run_one(case) -> RunResult:
        p, q = case
        pa, heap = _heap_array(p)
        made = run(array_of_list(list(q)), heap)
        out = run(kara.karatsuba_impl(pa, made.value), made.heap)
        if out is FAILURE:
            return RunResult(None, 0, len(p), False)
        got = out.heap.arrays[out.value.index]
        return RunResult(got, out.cost, len(p), got == kara.schoolbook(p, q))

    def gen(rng, n):
        n = max(1, n)
        return (
            [rng.randrange(-99, 100) for _ in range(n)],
            [rng.randrange(-99, 100) for _ in range(n)],
        )

    def claim():
        return akra_bazzi_class(kara.karatsuba_recurrence(consts)).result_class

    def class_check() -> bool:
        spec = kara.karatsuba_recurrence(consts)
        result = akra_bazzi_class(spec)
        if result.case != "bottom-heavy":
            return False
        if abs(result.result_class.exponent - 1.5849625007) > 1e-6:
            return False
        return empirical_ratio_check(spec, result.result_class, 2 ** 8, 2 ** 18).passed

    def class_fault_check(cls) -> bool:
        spec = kara.karatsuba_recurrence(consts)
        return empirical_ratio_check(spec, cls, 2 ** 8, 2 ** 18).passed

    return AlgorithmBundle(
        name="karatsuba",
        gen_input=gen,
        run=run_one,
        bound=lambda n: kara.karatsuba_time(n, consts),
        claim=claim,
        obligations=lambda: kara.karatsuba_obligations(consts),
        declared_hints=0,
        consts=dict(consts),
        with_consts=lambda c: karatsuba_bundle(c),
        tight_inputs=lambda: [([1], [1]), ([1, 1], [1, 1]), ([2, 0, 1], [1, 1, 1])],
        class_check=class_check,
        class_fault_check=class_fault_check,
    )


def select_bundle(consts=sel.SELECT_CONSTS) -> AlgorithmBundle:
    bound_fn = sel.select_time if consts is sel.SELECT_CONSTS else sel.make_select_time(consts)

    def run_one(case) -> RunResult:
        xs, i = case
        addr, heap = _heap_array(xs)
        out = run(sel.select_impl(addr, i), heap)
        assert isinstance(out, Success)
        return RunResult(out.value, out.cost, len(xs), out.value == sorted(xs)[i])

    def gen(rng, n):
        n = max(1, n)
        xs = [rng.randrange(-(10**6), 10**6) for _ in range(n)]
        return (xs, rng.randrange(n))

    def claim():
        return akra_bazzi_class(sel.select_recurrence(consts)).result_class

    def class_check() -> bool:
        spec = sel.select_recurrence(consts)
        result = akra_bazzi_class(spec)
        if result.case != "top-heavy" or result.result_class != PolyLog(1, 0):
            return False
        if not (0.8397 <= result.p <= 0.8399):
            return False
        return empirical_ratio_check(spec, result.result_class, 2 ** 8, 2 ** 18).passed

    def class_fault_check(cls) -> bool:
        return empirical_ratio_check(
            sel.select_recurrence(consts), cls, 2 ** 8, 2 ** 18
        ).passed

    return AlgorithmBundle(
        name="select",
        gen_input=gen,
        run=run_one,
        bound=lambda n: consts["len"] + bound_fn(n),
        claim=claim,
        obligations=lambda: sel.select_obligations(consts),
        declared_hints=1,
        consts=dict(consts),
        with_consts=lambda c: select_bundle(c),
        tight_inputs=lambda: [(list(range(n, 0, -1)), 0) for n in (1, 5, 20)],
        class_check=class_check,
        class_fault_check=class_fault_check,
    )


def knapsack_bundle(consts=knap.KNAPSACK_CONSTS) -> AlgorithmBundle:
    def run_one(case) -> RunResult:
        items, capacity = case
        out = run(knap.knapsack_impl(items, capacity), empty_heap())
        assert isinstance(out, Success)
        expected = knap.knapsack_fun(items, capacity)
        return RunResult(out.value, out.cost, (len(items), capacity), out.value == expected)

    def gen(rng, n):
        items = [(rng.randrange(0, 13), rng.randrange(0, 50)) for _ in range(n)]
        return (items, max(1, n))

    def claim():
        return linear_rec_class(knap.knapsack_linear_rec(consts))

    def class_check() -> bool:
        if claim() != PolyLog2(1, 0, 1, 0):
            return False
        return _witness_ok_2(
            lambda n, w: knap.knapsack_time(n, w, consts), PolyLog2(1, 0, 1, 0)
        )

    return AlgorithmBundle(
        name="knapsack",
        gen_input=gen,
        run=run_one,
        bound=lambda size: knap.knapsack_time(size[0], size[1], consts)
        if isinstance(size, tuple)
        else knap.knapsack_time(size, size, consts),
        claim=claim,
        obligations=lambda: knap.knapsack_obligations(consts),
        declared_hints=0,
        consts=dict(consts),
        with_consts=lambda c: knapsack_bundle(c),
        tight_inputs=lambda: [([(0, 5)] * 4, 9)],
        class_check=class_check,
        class_fault_check=lambda cls: _witness_ok_2(
            lambda n, w: knap.knapsack_time(n, w, consts), cls
        ),
    )


def _script_bundle(
    name: str,
    scheme_factory,
    new_structure,
    gen_script,
    shape: Callable[[int], int],
    multiplier: int,
) -> AlgorithmBundle:
    scheme = scheme_factory()

    def run_one(script) -> RunResult:
        report = run_sequence(scheme, script, new_structure(), seed=None)
        return RunResult(
            output=None,
            cost=report.total_actual,
            size=len(script),
            ok=report.passed,
        )

    def bound(n: int) -> int:
        return multiplier * n * shape(n + 1)

    def claim():
        return PolyLog(0, 1) if shape(4) > shape(2) else PolyLog(0, 0)

    def class_check() -> bool:
        return _witness_ok(shape, claim()) if claim() != PolyLog(0, 0) else True

    return AlgorithmBundle(
        name=name,
        gen_input=gen_script,
        run=run_one,
        bound=bound,
        claim=claim,
        obligations=lambda: [],
        declared_hints=0,
        consts={},
        with_consts=lambda c: _script_bundle(
            name, scheme_factory, new_structure, gen_script, shape, multiplier
        ),
        class_check=class_check,
        class_fault_check=lambda cls: _witness_ok(shape, cls),
    )


def dynarray_bundle() -> AlgorithmBundle:
    def gen_script(rng, n):
        script = []
        live = 0
        for _ in range(n):
            r = rng.random()
            if r < 0.7 or live == 0:
                script.append(("push", rng.randrange(100)))
                live += 1
            elif r < 0.9:
                script.append(("get", rng.randrange(live)))
            else:
                script.append(("len", None))
        return script

    return _script_bundle(
        "dynarray",
        dyn.dynarray_scheme,
        dyn.new_dynarray,
        gen_script,
        shape=lambda n: 1,
        multiplier=dyn.DYNARRAY_PUSH_MULTIPLIER,
    )


def skew_heap_bundle() -> AlgorithmBundle:
    def gen_script(rng, n):
        script = []
        live = 0
        for _ in range(n):
            if live and rng.random() < 0.45:
                script.append(("del_min", None))
                live -= 1
            else:
                script.append(("insert", rng.randrange(10**6)))
                live += 1
        return script

    return _script_bundle(
        "skew_heap",
        skew.skew_scheme,
        skew.new_skew_heap,
        gen_script,
        shape=skew.skew_shape,
        multiplier=skew.SKEW_MULTIPLIER,
    )


def splay_tree_bundle() -> AlgorithmBundle:
    def gen_script(rng, n):
        script = []
        for _ in range(n):
            r = rng.random()
            if r < 0.5:
                script.append(("insert", rng.randrange(10**5)))
            elif r < 0.9:
                script.append(("lookup", rng.randrange(10**5)))
            else:
                script.append(("splay", rng.randrange(10**5)))
        return script

    return _script_bundle(
        "splay_tree",
        spl.splay_scheme,
        spl.new_splay_tree,
        gen_script,
        shape=spl.splay_shape,
        multiplier=spl.SPLAY_MULTIPLIER,
    )


def _witness_ok(fn: Callable[[int], int], cls) -> bool:
    try:
        witness = calibrate_witness(fn, cls, geometric_samples(2 ** 8, 2 ** 12))
    except ValueError:
        return False
    return check_theta_witness(
        fn, cls, witness, geometric_samples(2 ** 13, 2 ** 20)
    ).passed


def _witness_ok_2(fn: Callable[[int, int], int], cls) -> bool:
    try:
        witness = calibrate_witness(fn, cls, grid_samples(2 ** 4, 2 ** 7))
    except ValueError:
        return False
    return check_theta_witness(fn, cls, witness, grid_samples(2 ** 7, 2 ** 10)).passed


def check_claimed_class(bundle: AlgorithmBundle, cls) -> bool:
    """A claimed class is accepted only when it matches the class rederived
    from the runtime function and survives the empirical checks."""
    return cls == bundle.claim() and bundle.class_fault_check(cls)


def constant_fault_detected(bundle: AlgorithmBundle, key: str) -> bool:
    """Decrement one runtime-function constant and report whether any
    acceptance-level check notices: either an obligation stops matching or
    a tight input exceeds the weakened bound."""
    faulted = dict(bundle.consts)
    faulted[key] -= 1
    variant = bundle.with_consts(faulted)
    reports = discharge_all(variant)
    if not all(r.success for r in reports):
        return True
    for inp in variant.tight_inputs():
        res = variant.run(inp)
        if res.cost > variant.bound(res.size):
            return True
    return False


def all_bundles() -> dict[str, AlgorithmBundle]:
    bundles = [
        merge_sort_bundle(),
        insertion_sort_bundle(),
        binary_search_bundle(),
        karatsuba_bundle(),
        select_bundle(),
        knapsack_bundle(),
        dynarray_bundle(),
        skew_heap_bundle(),
        splay_tree_bundle(),
    ]
    return {b.name: b for b in bundles}


def get_bundle(name: str) -> AlgorithmBundle:
    bundles = all_bundles()
    if name not in bundles:
        raise KeyError(name)
    return bundles[name]


ALGORITHM_NAMES = (
    "merge_sort",
    "insertion_sort",
    "binary_search",
    "karatsuba",
    "select",
    "knapsack",
    "dynarray",
    "skew_heap",
    "splay_tree",
)


# ---------------------------------------------------------------------------
# registry of runtime-function bounds
# ---------------------------------------------------------------------------

class BoundCheckFailed(Exception):
    pass


def register_time_function(
    registry: BoundRegistry,
    name: str,
    closed_form: Callable[[int], int],
    cls,
    actual_cost: Callable[[int], int],
    sweep: range,
    provenance: str = "declared",
) -> None:
    """Admit a closed form into the registry only after an exhaustive check
    that it bounds the measured interpreter cost across the sweep."""
    for n in sweep:
        if actual_cost(n) > closed_form(n):
            raise BoundCheckFailed(
                f"{name}({n}) = {closed_form(n)} below measured cost {actual_cost(n)}"
            )
    registry.register(name, cls, provenance)


def _atake_cost(n: int) -> int:
    addr, heap = _heap_array(range(n))
    from ..heap import atake

    out = run(atake(n // 2, addr), heap)
    return out.cost


def _adrop_cost(n: int) -> int:
    addr, heap = _heap_array(range(n))
    from ..heap import adrop

    out = run(adrop(n // 2, addr), heap)
    return out.cost


def _mergeinto_cost(n: int) -> int:
    """Worst-case merge: perfectly interleaved halves keep both sides live."""
    la = n // 2
    target = list(range(n))
    a_vals = target[0::2]
    b_vals = target[1::2]
    if len(a_vals) != la:
        a_vals, b_vals = b_vals, a_vals
    a, heap = _heap_array(a_vals)
    made = run(array_of_list(b_vals), heap)
    b, heap = made.value, made.heap
    made = run(array_of_list([0] * n), heap)
    x, heap = made.value, made.heap
    out = run(srt.mergeinto(la, n - la, a, b, x), heap)
    return out.cost


def build_registry(sweep_hi: int = 1 << 12) -> BoundRegistry:
    """The table of known runtime-function bounds, auxiliaries checked
    exhaustively against the interpreter before admission."""
    registry = BoundRegistry()
    sweep = range(0, sweep_hi + 1)
    register_time_function(
        registry, "atake_time", srt.atake_time, PolyLog(1, 0), _atake_cost, sweep
    )
    register_time_function(
        registry, "adrop_time", srt.adrop_time, PolyLog(1, 0), _adrop_cost, sweep
    )
    # mergeinto is only ever invoked on two nonempty halves (n >= 2)
    register_time_function(
        registry,
        "mergeinto_time",
        srt.mergeinto_time,
        PolyLog(1, 0),
        _mergeinto_cost,
        range(2, sweep_hi + 1),
    )
    registry.register("merge_sort_time", PolyLog(1, 1), SOLVED)
    registry.register("insertion_sort_time", PolyLog(2, 0), SOLVED)
    registry.register("bsearch_time", PolyLog(0, 1), SOLVED)
    registry.register("select_time", PolyLog(1, 0), SOLVED)
    registry.register("knapsack_time", PolyLog2(1, 0, 1, 0), SOLVED)
    return registry
