"""0/1 knapsack dynamic program: items outer, capacities inner.

The capacity table lives on the heap; item weights and values are program
parameters.  Every inner step does exactly two reads and one write, so the
per-item cost is data-independent and the bound is met with equality by
zero-weight items.
"""

from __future__ import annotations

from itertools import combinations

from ..credits import VarE, normalize, t_lit, t_var
from ..heap import array_new, array_nth, array_upd, proc
from ..landau import LinearArg, PolyLog, Term2
from ..recurrence import LinearRecSpec

W = VarE("W")

KNAPSACK_CONSTS = {
    "table_pad": 2,   # dp allocation is W+1 cells plus the command pad
    "step": 3,        # two reads and one write per capacity
    "final": 1,       # reading the answer cell
}


def knapsack_fun(items: list[tuple[int, int]], capacity: int) -> int:
    dp = [0] * (capacity + 1)
    for weight, value in items:
        for c in range(capacity, weight - 1, -1):
            dp[c] = max(dp[c], dp[c - weight] + value)
    return dp[capacity]


def knapsack_brute(items: list[tuple[int, int]], capacity: int) -> int:
    best = 0
    for k in range(len(items) + 1):
        for subset in combinations(items, k):
            if sum(w for w, _ in subset) <= capacity:
                best = max(best, sum(v for _, v in subset))
    return best


@proc
def knapsack_impl(items: list[tuple[int, int]], capacity: int):
    dp = yield array_new(capacity + 1, 0)
    for weight, value in items:
        for c in range(capacity, weight - 1, -1):
            prev = yield array_nth(dp, c - weight)
            cur = yield array_nth(dp, c)
            yield array_upd(dp, c, max(cur, prev + value))
    return (yield array_nth(dp, capacity))


def knapsack_time(n: int, capacity: int, consts=KNAPSACK_CONSTS) -> int:
    return (
        capacity + consts["table_pad"]
        + n * consts["step"] * (capacity + 1)
        + consts["final"]
    )


def knapsack_linear_rec(consts=KNAPSACK_CONSTS) -> LinearRecSpec:
    # per-item step costs step*(W+1), linear in the capacity
    return LinearRecSpec(arity=2, g_class=PolyLog(1, 0))


def knapsack_expr_terms() -> list[Term2]:
    """The full bound as a two-variable sum: init ~ W, loop ~ nW, final ~ 1."""
    return [
        Term2(n_power=1),                       # table allocation, reading W as n
        Term2(call="loop_time", arg_m=LinearArg(), arg_n=LinearArg()),
        Term2(),                                # final read
    ]


def knapsack_obligations(consts=KNAPSACK_CONSTS):
    item_total = normalize(consts["step"] * t_var("W") + t_lit(consts["step"]))
    item_demand = normalize(3 * t_var("W") + t_lit(3))
    init_total = normalize(t_var("W") + t_lit(consts["table_pad"]))
    init_demand = normalize(t_var("W") + t_lit(2))
    final_total = normalize(t_lit(consts["final"]))
    final_demand = normalize(t_lit(1))
    return [
        ("table-init", init_total, init_demand, [], []),
        ("per-item", item_total, item_demand, [], []),
        ("final-read", final_total, final_demand, [], []),
    ]
