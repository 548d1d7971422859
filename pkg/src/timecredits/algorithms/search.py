"""Binary search over a sorted heap array.

The runtime bound halves on the floor side only; the ceiling-side recursion
is covered by a single monotonicity hint, the first of the two places in
this collection where plain term matching is not enough.
"""

from __future__ import annotations

from fractions import Fraction

from ..credits import (
    CallAtom,
    ConstE,
    FloorDivE,
    Hint,
    MonotoneTable,
    SubE,
    VarE,
    normalize,
    t_call,
    t_lit,
)
from ..heap import array_len, array_nth, proc, ret
from ..landau import PolyLog
from ..recurrence import AkraBazziSpec, RecTerm

N = VarE("n")

BINARY_SEARCH_CONSTS = {
    "len": 1,    # reading the array length
    "level": 2,  # probe plus the potential hit return
    "base": 1,   # empty-range return
}


def binary_search_fun(xs: list, key) -> "int | None":
    lo, hi = 0, len(xs)
    while hi > lo:
        mid = lo + (hi - lo) // 2
        if xs[mid] == key:
            return mid
        if xs[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return None


@proc
def binary_search_impl(x, key):
    n = yield array_len(x)
    lo, hi = 0, n
    while hi > lo:
        mid = lo + (hi - lo) // 2
        v = yield array_nth(x, mid)
        if v == key:
            return (yield ret(mid))
        if v < key:
            lo = mid + 1
        else:
            hi = mid
    return (yield ret(None))


def bsearch_time(n: int, consts=BINARY_SEARCH_CONSTS) -> int:
    """Bound for the probe loop on a window of size n."""
    if n <= 0:
        return consts["base"]
    return consts["level"] + bsearch_time(n // 2, consts)


def binary_search_time(n: int, consts=BINARY_SEARCH_CONSTS) -> int:
    return consts["len"] + bsearch_time(n, consts)


def bsearch_recurrence(consts=BINARY_SEARCH_CONSTS) -> AkraBazziSpec:
    return AkraBazziSpec(
        x0=1,
        terms=(RecTerm(Fraction(1), Fraction(1, 2), "floor"),),
        g_class=PolyLog(0, 0),
        g_concrete=lambda n: consts["level"],
        base={0: consts["base"]},
        name="bsearch_time",
    )


def upper_window_hint(consts=BINARY_SEARCH_CONSTS, table_bound: int = 4096) -> Hint:
    """bsearch_time(n div 2) >= bsearch_time(n - n div 2 - 1).

    Justified by monotonicity plus the arithmetic fact that the upper
    window never exceeds the lower one, checked across the table range.
    """
    table = MonotoneTable(lambda k: bsearch_time(k, consts), table_bound)

    def justify() -> bool:
        if not table.monotone:
            return False
        return all(n - n // 2 - 1 <= n // 2 for n in range(table_bound + 1))

    return Hint(
        s=CallAtom("bsearch_time", (FloorDivE(N, 2),)),
        t=normalize(t_call("bsearch_time", SubE(SubE(N, FloorDivE(N, 2)), ConstE(1)))),
        justification=justify,
        note="upper window fits the half budget",
    )


def binary_search_obligations(consts=BINARY_SEARCH_CONSTS):
    half = FloorDivE(N, 2)
    upper = SubE(SubE(N, half), ConstE(1))
    level_total = normalize(t_lit(consts["level"]) + t_call("bsearch_time", half))
    return [
        ("empty", normalize(t_lit(consts["base"])), normalize(t_lit(1)), [], []),
        ("hit", level_total, normalize(t_lit(2)), [], []),
        ("lower", level_total, normalize(t_lit(1) + t_call("bsearch_time", half)), [], []),
        (
            "upper",
            level_total,
            normalize(t_lit(1) + t_call("bsearch_time", upper)),
            [],
            [upper_window_hint(consts)],
        ),
    ]
