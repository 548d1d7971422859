"""Polynomial multiplication by the three-product split, equal lengths only.

Coefficient arithmetic is pure and free; every heap command is charged, and
the loop structure never branches on data, so the cost of a run depends on
the input length alone.  The runtime bound is therefore exact, not just an
upper bound, which the tests assert.
"""

from __future__ import annotations

from fractions import Fraction

from ..credits import CeilDivE, FloorDivE, VarE, normalize, t_call, t_expr, t_lit, t_var
from ..heap import adrop, array_len, array_new, array_nth, array_upd, atake, proc, ret
from ..landau import PolyLog
from ..recurrence import AkraBazziSpec, RecTerm

N = VarE("n")

KARATSUBA_CONSTS = {
    "base": 6,        # two length reads, two coefficient reads, one-cell result
    "len_reads": 2,
    "split_pad": 4,   # the four +1s of atake/adrop on both inputs
    "sum_cell": 2,    # write plus low read per cell of the two half sums
    "sum_extra": 1,   # additional high read on the overlap
    "sum_pad": 1,     # allocation pad per half sum
    "out_pad": 1,     # allocation pad of the result array
    "add_cell": 3,    # read-read-write per accumulated product cell
    "mid_cell": 4,    # the middle band reads z1, z0, the target, then writes
    "mid_extra": 1,   # z2 read where the middle band overlaps it
}


def schoolbook(p: list, q: list) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def karatsuba_fun(p: list, q: list) -> list:
    if len(p) != len(q):
        raise ValueError("equal lengths required")
    n = len(p)
    if n == 1:
        return [p[0] * q[0]]
    m = -(-n // 2)
    p_lo, p_hi = p[:m], p[m:]
    q_lo, q_hi = q[:m], q[m:]
    ps = [p_lo[i] + (p_hi[i] if i < n - m else 0) for i in range(m)]
    qs = [q_lo[i] + (q_hi[i] if i < n - m else 0) for i in range(m)]
    z0 = karatsuba_fun(p_lo, q_lo)
    z2 = karatsuba_fun(p_hi, q_hi)
    z1 = karatsuba_fun(ps, qs)
    out = [0] * (2 * n - 1)
    for i, v in enumerate(z0):
        out[i] += v
    for i, v in enumerate(z2):
        out[2 * m + i] += v
    for i in range(2 * m - 1):
        mid = z1[i] - z0[i] - (z2[i] if i < len(z2) else 0)
        out[m + i] += mid
    return out


@proc
def karatsuba_impl(p, q):
    n = yield array_len(p)
    nq = yield array_len(q)
    if n != nq:
        yield array_nth(p, -1)  # unequal lengths are out of contract
    if n == 1:
        a = yield array_nth(p, 0)
        b = yield array_nth(q, 0)
        return (yield array_new(1, a * b))

    m = -(-n // 2)
    p_lo = yield atake(m, p)
    p_hi = yield adrop(m, p)
    q_lo = yield atake(m, q)
    q_hi = yield adrop(m, q)

    ps = yield array_new(m, 0)
    qs = yield array_new(m, 0)
    for src_lo, src_hi, dst in ((p_lo, p_hi, ps), (q_lo, q_hi, qs)):
        for i in range(m):
            u = yield array_nth(src_lo, i)
            if i < n - m:
                v = yield array_nth(src_hi, i)
                u = u + v
            yield array_upd(dst, i, u)

    z0 = yield karatsuba_impl(p_lo, q_lo)
    z2 = yield karatsuba_impl(p_hi, q_hi)
    z1 = yield karatsuba_impl(ps, qs)

    out = yield array_new(2 * n - 1, 0)
    for i in range(2 * m - 1):
        v = yield array_nth(z0, i)
        w = yield array_nth(out, i)
        yield array_upd(out, i, w + v)
    for i in range(2 * (n - m) - 1):
        v = yield array_nth(z2, i)
        w = yield array_nth(out, 2 * m + i)
        yield array_upd(out, 2 * m + i, w + v)
    for i in range(2 * m - 1):
        a = yield array_nth(z1, i)
        b = yield array_nth(z0, i)
        mid = a - b
        if i < 2 * (n - m) - 1:
            c = yield array_nth(z2, i)
            mid = mid - c
        w = yield array_nth(out, m + i)
        yield array_upd(out, m + i, w + mid)
    return (yield ret(out))


def karatsuba_toll(n: int, consts=KARATSUBA_CONSTS) -> int:
    """Exact non-recursive cost at size n >= 2, mirroring the loops above."""
    m = -(-n // 2)
    lo = n - m
    split = 2 * (m + lo) + consts["split_pad"]
    sums = 2 * (m + consts["sum_pad"]) + 2 * (consts["sum_cell"] * m + consts["sum_extra"] * lo)
    alloc_out = (2 * n - 1) + consts["out_pad"]
    add_bands = consts["add_cell"] * ((2 * m - 1) + (2 * lo - 1))
    mid_band = consts["mid_cell"] * (2 * m - 1) + consts["mid_extra"] * (2 * lo - 1)
    trailing_ret = 1
    return consts["len_reads"] + split + sums + alloc_out + add_bands + mid_band + trailing_ret


def karatsuba_time(n: int, consts=KARATSUBA_CONSTS) -> int:
    if n <= 1:
        return consts["base"]
    m = -(-n // 2)
    return (
        karatsuba_toll(n, consts)
        + 2 * karatsuba_time(m, consts)
        + karatsuba_time(n - m, consts)
    )


def karatsuba_recurrence(consts=KARATSUBA_CONSTS) -> AkraBazziSpec:
    return AkraBazziSpec(
        x0=2,
        terms=(
            RecTerm(Fraction(2), Fraction(1, 2), "ceil"),
            RecTerm(Fraction(1), Fraction(1, 2), "floor"),
        ),
        g_class=PolyLog(1, 0),
        g_concrete=lambda n: karatsuba_toll(n, consts),
        base={0: consts["base"], 1: consts["base"]},
        name="karatsuba_time",
    )


def _toll_expr(consts):
    """The recursive-case toll over subtraction-free atoms: n, the two half
    widths, and the two output band widths 2*ceil - 1 and 2*floor - 1."""
    from ..credits import ConstE, MulE, SubE

    half_up = CeilDivE(N, 2)
    half_dn = FloorDivE(N, 2)
    band_up = SubE(MulE(2, half_up), ConstE(1))
    band_dn = SubE(MulE(2, half_dn), ConstE(1))
    const = (
        consts["len_reads"]
        + consts["split_pad"]
        + 2 * consts["sum_pad"]
        + consts["out_pad"]
        + 2  # the band-overlap cell of the output plus the trailing return
    )
    return (
        t_lit(const)
        + 2 * t_var("n")
        + (2 + 2 * consts["sum_cell"]) * t_expr(half_up)
        + (2 * consts["sum_extra"]) * t_expr(half_dn)
        + (1 + consts["add_cell"] + consts["mid_cell"]) * t_expr(band_up)
        + (1 + consts["add_cell"] + consts["mid_extra"]) * t_expr(band_dn)
    )


def karatsuba_obligations(consts=KARATSUBA_CONSTS):
    half_up = CeilDivE(N, 2)
    base_total = normalize(t_lit(consts["base"]))
    base_demand = normalize(t_lit(6))
    recursion = 2 * t_call("karatsuba_time", half_up) + t_call(
        "karatsuba_time", FloorDivE(N, 2)
    )
    rec_total = normalize(_toll_expr(consts) + recursion)
    rec_demand = normalize(_toll_expr(KARATSUBA_CONSTS) + recursion)
    return [
        ("base", base_total, base_demand, [], []),
        ("recursive", rec_total, rec_demand, [], []),
    ]
