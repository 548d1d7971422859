"""Median-of-medians selection with groups of five and in-place partition.

The medians of the five-element groups are swapped into a front block, the
pivot is found by recursing on that block, and a three-way partition decides
which side (if any) to recurse into.  Small windows fall back to insertion
sort.  The runtime bound charges the partition-side recursion at the ceiling
of 7n/10; the actual window is smaller, which the selection hint certifies
via monotonicity.
"""

from __future__ import annotations

from fractions import Fraction

from ..credits import (
    CallAtom,
    CeilDivE,
    Hint,
    MonotoneTable,
    MulE,
    VarE,
    normalize,
    t_call,
    t_expr,
    t_lit,
    t_var,
)
from ..heap import array_len, array_nth, array_upd, proc, ret
from ..landau import PolyLog
from ..recurrence import AkraBazziSpec, RecTerm

N = VarE("n")
CUTOFF = 20

SELECT_CONSTS = {
    "len": 1,
    "small_probe": 1,    # the answering read in the insertion-sorted window
    "group_pad": 4,      # median read plus the three-step swap, per group
    "group_sort": 28,    # worst insertion sort of a five-element window
    "part_coeff": 4,     # worst per-element cost of the three-way partition
    "hit_ret": 1,        # returning the pivot when the index lands on it
}


def select_fun(xs: list, i: int):
    return sorted(xs)[i]


def _ins_range_cost(consts, s: int) -> int:
    # worst case of the in-place window sort: sum of (2t + 2) for t < s
    return s * s + s - 2 if s >= 1 else 0


@proc
def _sort_window(x, lo: int, hi: int):
    for i in range(lo + 1, hi):
        v = yield array_nth(x, i)
        j = i
        while j > lo:
            u = yield array_nth(x, j - 1)
            if u > v:
                yield array_upd(x, j, u)
                j -= 1
            else:
                break
        yield array_upd(x, j, v)
    return None


@proc
def _select_window(x, lo: int, hi: int, i: int):
    """i-th smallest of the window [lo, hi); leaves the window permuted."""
    n = hi - lo
    if n <= CUTOFF:
        yield _sort_window(x, lo, hi)
        return (yield array_nth(x, lo + i))

    # move each five-element group's median into the front block
    groups = -(-n // 5)
    for k in range(groups):
        gl = lo + 5 * k
        gr = min(gl + 5, hi)
        yield _sort_window(x, gl, gr)
        mid = gl + (gr - gl) // 2
        med = yield array_nth(x, mid)
        front = yield array_nth(x, lo + k)
        yield array_upd(x, lo + k, med)
        yield array_upd(x, mid, front)

    pivot = yield _select_window(x, lo, lo + groups, (groups - 1) // 2)

    # three-way partition of the window around the pivot value
    it = lo
    lt = lo
    gt = hi
    while it < gt:
        v = yield array_nth(x, it)
        if v < pivot:
            u = yield array_nth(x, lt)
            yield array_upd(x, lt, v)
            yield array_upd(x, it, u)
            lt += 1
            it += 1
        elif v > pivot:
            u = yield array_nth(x, gt - 1)
            yield array_upd(x, gt - 1, v)
            yield array_upd(x, it, u)
            gt -= 1
        else:
            it += 1

    lt_count = lt - lo
    eq_count = gt - lt
    if i < lt_count:
        return (yield _select_window(x, lo, lo + lt_count, i))
    if i < lt_count + eq_count:
        return (yield ret(pivot))
    return (yield _select_window(x, gt, hi, i - lt_count - eq_count))


@proc
def select_impl(x, i: int):
    n = yield array_len(x)
    return (yield _select_window(x, 0, n, i))


def make_select_time(consts=SELECT_CONSTS):
    """Memoized bound for the selection window of size n."""
    memo: dict[int, int] = {}

    def fn(n: int) -> int:
        if n in memo:
            return memo[n]
        if n <= CUTOFF:
            value = _ins_range_cost(consts, n) + consts["small_probe"] if n >= 1 else 1
        else:
            groups = -(-n // 5)
            value = (
                (consts["group_sort"] + consts["group_pad"]) * groups
                + consts["part_coeff"] * n
                + consts["hit_ret"]
                + fn(groups)
                + fn(-(-7 * n // 10))
            )
        memo[n] = value
        return value

    return fn


select_time = make_select_time()


def full_select_time(n: int, consts=SELECT_CONSTS) -> int:
    bound = select_time if consts is SELECT_CONSTS else make_select_time(consts)
    return consts["len"] + bound(n)


def select_recurrence(consts=SELECT_CONSTS) -> AkraBazziSpec:
    bound = select_time if consts is SELECT_CONSTS else make_select_time(consts)

    def toll(n: int) -> int:
        groups = -(-n // 5)
        return (
            (consts["group_sort"] + consts["group_pad"]) * groups
            + consts["part_coeff"] * n
            + consts["hit_ret"]
        )

    return AkraBazziSpec(
        x0=CUTOFF + 1,
        terms=(
            RecTerm(Fraction(1), Fraction(1, 5), "ceil"),
            RecTerm(Fraction(1), Fraction(7, 10), "ceil"),
        ),
        g_class=PolyLog(1, 0),
        g_concrete=toll,
        base={n: bound(n) for n in range(CUTOFF + 1)},
        name="select_time",
    )


def partition_side_bound(n: int) -> int:
    """Worst size of the recursive window after partitioning, from the
    group-median counting argument."""
    groups = -(-n // 5)
    r = n - 5 * (groups - 1)
    le_medians = -(-groups // 2)
    ge_medians = groups // 2 + 1
    le_elems = 3 * le_medians if r == 5 else 3 * (le_medians - 1) + (r // 2 + 1)
    ge_elems = 3 * ge_medians if r == 5 else 3 * (ge_medians - 1) + (r - r // 2)
    return max(n - le_elems, n - ge_elems)


def partition_hint(consts=SELECT_CONSTS, table_bound: int = 1 << 14) -> Hint:
    """select_time(ceil(7n/10)) >= select_time(l) for the actual window l.

    Certified by monotonicity of select_time together with the combinatorial
    window bound checked across the table range.
    """
    bound = select_time if consts is SELECT_CONSTS else make_select_time(consts)
    table = MonotoneTable(bound, table_bound)

    def justify() -> bool:
        if not table.monotone:
            return False
        return all(
            partition_side_bound(n) <= -(-7 * n // 10)
            for n in range(CUTOFF + 1, table_bound + 1)
        )

    cap = CeilDivE(MulE(7, N), 10)
    return Hint(
        s=CallAtom("select_time", (cap,)),
        t=normalize(t_call("select_time", VarE("l"))),
        justification=justify,
        note="partition window fits under ceil(7n/10)",
    )


def select_obligations(consts=SELECT_CONSTS):
    groups = CeilDivE(N, 5)
    cap = CeilDivE(MulE(7, N), 10)
    nonrec = (
        (consts["group_sort"] + consts["group_pad"]) * t_expr(groups)
        + consts["part_coeff"] * t_var("n")
        + t_lit(consts["hit_ret"])
    )
    total = normalize(
        nonrec + t_call("select_time", groups) + t_call("select_time", cap)
    )
    small_total = normalize(t_lit(_ins_range_cost(consts, CUTOFF) + consts["small_probe"]))
    small_demand = normalize(t_lit(_ins_range_cost(SELECT_CONSTS, CUTOFF) + 1))
    medians_demand = (
        32 * t_expr(groups)  # per-group sort (28) plus median swap (4)
        + 4 * t_var("n")     # three-way partition
        + t_lit(1)           # pivot-hit return
        + t_call("select_time", groups)
    )
    recurse_demand = normalize(medians_demand + t_call("select_time", VarE("l")))
    return [
        ("small-window", small_total, small_demand, [], []),
        ("recursive", total, recurse_demand, [], [partition_hint(consts)]),
    ]
