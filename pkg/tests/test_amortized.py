import random

import pytest

from timecredits.amortized import (
    AmortizedOp,
    AmortizedScheme,
    NoMultiplier,
    PreconditionViolated,
    check_op_inequality,
    collect_corpus,
    minimal_multiplier,
    run_sequence,
)
from timecredits.algorithms.dynarray import (
    DYNARRAY_PUSH_MULTIPLIER,
    dynarray_scheme,
    new_dynarray,
    potential,
    push,
)
from timecredits.algorithms.skew_heap import new_skew_heap, skew_scheme
from timecredits.algorithms.splay_tree import (
    SplayTree,
    new_splay_tree,
    splay_scheme,
    tree_node,
)


def test_dynarray_full_push_example():
    # len 4 / cap 4: potential drops from 4 to 2 across the doubling push
    d = new_dynarray()
    for k in range(4):
        d, _ = push(d, k)
    assert (d.length, d.capacity) == (4, 4)
    assert potential(d) == 4
    scheme = dynarray_scheme()
    entry, d5 = check_op_inequality(scheme, "push", d, 99)
    assert entry.potential_before == 4
    assert entry.potential_after == 2 * 5 - 8
    assert entry.passes


def test_dynarray_sequence_and_telescope():
    scheme = dynarray_scheme()
    ops = [("push", i) for i in range(8)]
    report = run_sequence(scheme, ops, new_dynarray(), seed=0)
    assert report.passed
    assert report.total_actual <= (
        report.total_amortized + report.initial_potential - report.final_potential
    )


def test_empty_sequence_trivially_passes():
    scheme = dynarray_scheme()
    report = run_sequence(scheme, [], new_dynarray())
    assert report.passed
    assert report.total_actual == 0 and report.total_amortized == 0


def test_telescoping_follows_from_per_op():
    """Whenever every per-op entry passes, the telescoped check passes."""
    scheme = dynarray_scheme()
    rng = random.Random(5)
    for trial in range(20):
        ops = []
        live = 0
        for _ in range(rng.randrange(1, 120)):
            if live and rng.random() < 0.3:
                ops.append(("get", rng.randrange(live)))
            else:
                ops.append(("push", rng.randrange(50)))
                live += 1
        report = run_sequence(scheme, ops, new_dynarray(), seed=trial)
        assert report.per_op_ok
        assert report.telescoped_ok


def test_potential_nonnegative_throughout():
    scheme = dynarray_scheme()
    ops = [("push", i) for i in range(200)]
    structure = new_dynarray()
    for op, arg in ops:
        entry, structure = check_op_inequality(scheme, op, structure, arg)
        assert entry.potential_before >= 0 and entry.potential_after >= 0


def test_minimal_multiplier_dynarray():
    scheme = dynarray_scheme()
    corpus = collect_corpus(scheme, [("push", i) for i in range(300)], new_dynarray())
    found = minimal_multiplier(scheme, lambda n: 1, corpus)
    assert found.multiplier == DYNARRAY_PUSH_MULTIPLIER
    assert found.binding.slack >= 0
    # one below the minimum must fail somewhere
    failing = dynarray_scheme(found.multiplier - 1)
    report = run_sequence(failing, [("push", i) for i in range(300)], new_dynarray())
    assert not report.passed


def test_minimal_multiplier_monotone_in_corpus():
    scheme = dynarray_scheme()
    ops = [("push", i) for i in range(400)]
    corpus = collect_corpus(scheme, ops, new_dynarray())
    small = minimal_multiplier(scheme, lambda n: 1, corpus[:50])
    large = minimal_multiplier(scheme, lambda n: 1, corpus)
    assert large.multiplier >= small.multiplier


def test_no_multiplier_for_linear_cost_constant_shape():
    # an op whose cost grows linearly cannot have constant amortized cost
    def apply_op(state, arg):
        return state + 1, state + 1  # cost grows with every application

    scheme = AmortizedScheme(
        name="linear",
        potential=lambda s: 0,
        size_measure=lambda s: s + 1,
        ops={"tick": AmortizedOp("tick", apply_op, lambda n: 1)},
    )
    corpus = collect_corpus(scheme, [("tick", None)] * 2000, 0)
    with pytest.raises(NoMultiplier):
        minimal_multiplier(scheme, lambda n: 1, corpus)


def test_splay_single_node_amortized_example():
    # claimed budget 15 * (ceil(3 log2 1) + 2) = 30 covers a root splay
    t = tree_node(None, 7, None)
    from timecredits.heap import array_of_list, empty_heap, run

    made = run(array_of_list([7, None, None]), empty_heap())
    structure = SplayTree(made.heap, made.value, t)
    scheme = splay_scheme(15)
    entry, _ = check_op_inequality(scheme, "splay", structure, 7)
    assert 15 * 2 == 30
    assert entry.actual_cost + entry.potential_after <= 30 + entry.potential_before


def test_splay_non_bst_precondition():
    bad = tree_node(tree_node(None, 9, None), 5, None)  # left child above root
    structure = SplayTree(new_splay_tree().heap, None, bad)
    scheme = splay_scheme()
    with pytest.raises(PreconditionViolated):
        check_op_inequality(scheme, "splay", structure, 9)


def test_skew_and_splay_random_ledgers():
    rng = random.Random(3)
    skew = skew_scheme()
    ops = []
    live = 0
    for _ in range(1500):
        if live and rng.random() < 0.45:
            ops.append(("del_min", None))
            live -= 1
        else:
            ops.append(("insert", rng.randrange(10**6)))
            live += 1
    report = run_sequence(skew, ops, new_skew_heap(), seed=3)
    assert report.passed

    splay = splay_scheme()
    ops2 = [("insert", rng.randrange(10**5)) for _ in range(800)]
    ops2 += [("lookup", rng.randrange(10**5)) for _ in range(400)]
    report2 = run_sequence(splay, ops2, new_splay_tree(), seed=3)
    assert report2.passed


def test_ledger_csv_shape():
    scheme = dynarray_scheme()
    report = run_sequence(scheme, [("push", 1), ("get", 0)], new_dynarray())
    text = report.to_csv()
    lines = text.strip().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "op,n,f_t,f_at,P_before,P_after,slack"
    assert len(lines) == 4
    fields = lines[2].split(",")
    assert fields[0] == "push" and len(fields) == 7


def test_failure_record_is_replayable():
    failing = dynarray_scheme(1)  # too small to cover a doubling push
    ops = [("push", i) for i in range(40)]
    report = run_sequence(failing, ops, new_dynarray(), seed=9)
    assert not report.passed
    text = report.render_failure()
    assert "failing op" in text and "replay" in text
    # replaying the recorded ops reproduces the verdict
    again = run_sequence(failing, report.ops_replay, new_dynarray(), seed=9)
    assert not again.passed
    assert again.first_failure().op == report.first_failure().op
