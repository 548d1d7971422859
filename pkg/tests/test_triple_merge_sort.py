"""End-to-end triple for the flagship sort: an array plus exactly
merge_sort_time(n) credits suffices to sort in place, surplus heap and
credits absorbed by the Top-absorbing postcondition."""

import random

from timecredits.assertions import (
    ARRAY,
    Credits,
    ExistsVal,
    HoareTriple,
    PartialHeap,
    Pure,
    check_triple,
    check_triple_sampled,
    pheap,
    points_to_array,
)
from timecredits.heap import Addr, array_of_list, empty_heap, run
from timecredits.algorithms.sorting import (
    merge_sort_impl,
    merge_sort_time,
    merge_sort_worst_input,
)

FIRST_ARRAY = Addr(0, ARRAY)  # every generated model allocates it first


def concrete_triple(xs, undercredit=0):
    budget = merge_sort_time(len(xs)) - undercredit
    pre = points_to_array(FIRST_ARRAY, xs) * Credits(budget)
    post = lambda r: points_to_array(FIRST_ARRAY, sorted(xs))
    return HoareTriple(pre, lambda ph: merge_sort_impl(FIRST_ARRAY), post, top_absorbing=True)


def model_for(xs, undercredit=0) -> PartialHeap:
    made = run(array_of_list(xs), empty_heap())
    return pheap(made.heap, {made.value}, merge_sort_time(len(xs)) - undercredit)


def test_200_random_lists_within_budget():
    rng = random.Random(2024)
    for trial in range(200):
        max_len = 512 if trial % 10 == 0 else 96
        xs = [rng.randrange(-1000, 1000) for _ in range(rng.randrange(0, max_len + 1))]
        verdict = check_triple(concrete_triple(xs), model_for(xs))
        assert verdict.passed and not verdict.vacuous, (trial, verdict.describe())


def test_undercredited_worst_case_length_16_is_refuted():
    xs = merge_sort_worst_input(16)
    verdict = check_triple(concrete_triple(xs, undercredit=1), model_for(xs, undercredit=1))
    assert verdict.kind == "fail-credits"
    assert verdict.needed == merge_sort_time(16)
    assert verdict.available == merge_sort_time(16) - 1


def _schematic_triple(n: int, undercredit: int = 0) -> HoareTriple:
    """One triple covering every length-n model: contents quantified away."""
    budget = merge_sort_time(n) - undercredit

    def has_contents(v):
        if not (isinstance(v, tuple) and len(v) == n):
            return Pure(False)
        return points_to_array(FIRST_ARRAY, v) * Credits(budget)

    def is_sorted_now(v):
        if not (isinstance(v, tuple) and len(v) == n):
            return Pure(False)
        return points_to_array(FIRST_ARRAY, v) * Pure(list(v) == sorted(v))

    return HoareTriple(
        pre=ExistsVal(has_contents, note="xs"),
        prog=lambda ph: merge_sort_impl(FIRST_ARRAY),
        post=lambda r: ExistsVal(is_sorted_now, note="ys"),
        top_absorbing=True,
    )


def test_sampled_schematic_triple_no_counterexamples():
    def gen(rng: random.Random) -> PartialHeap:
        xs = [rng.randrange(-8, 9) for _ in range(16)]
        return model_for(xs)

    report = check_triple_sampled(_schematic_triple(16), gen, trials=60, seed=11)
    assert report.ok
    assert report.passes == 60 and report.vacuous == 0


def test_sampled_undercredited_finds_replayable_counterexample():
    def gen(rng: random.Random) -> PartialHeap:
        if rng.random() < 0.25:
            xs = merge_sort_worst_input(16)
        else:
            xs = [rng.randrange(-8, 9) for _ in range(16)]
        return model_for(xs, undercredit=1)

    triple = _schematic_triple(16, undercredit=1)
    report = check_triple_sampled(triple, gen, trials=40, seed=5)
    assert report.counterexample is not None
    cx = report.counterexample
    assert cx.verdict.kind == "fail-credits"
    replayed_model = gen(random.Random(cx.seed))
    assert check_triple(triple, replayed_model).kind == "fail-credits"
    assert "fail" in cx.render()
