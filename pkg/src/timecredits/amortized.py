"""Potential-function accounting for amortized cost claims.

A scheme bundles a data structure sort with a natural-valued potential, a
size measure, and named operations whose actual costs come from the
interpreter.  Each application is checked against the amortized inequality
claimed_cost + potential_before >= actual_cost + potential_after, and whole
operation sequences are additionally checked in telescoped form.  The
multiplier search finds the smallest constant K making K * shape(size) an
admissible claim over a corpus of recorded applications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence


class PreconditionViolated(Exception):
    pass


class HarnessError(Exception):
    """An instrumented operation failed at the interpreter level."""


class NoMultiplier(Exception):
    pass


@dataclass
class AmortizedOp:
    name: str
    # (structure, argument) -> (new structure, actual interpreter cost)
    apply: Callable[[Any, Any], tuple[Any, int]]
    # claimed amortized cost as a function of the input's size measure
    amortized_bound: Callable[[int], int]


@dataclass
class AmortizedScheme:
    name: str
    potential: Callable[[Any], int]
    size_measure: Callable[[Any], int]
    ops: dict[str, AmortizedOp]
    precondition: Callable[[Any], bool] = lambda s: True


@dataclass(frozen=True)
class OpLedgerEntry:
    op: str
    size: int
    actual_cost: int
    amortized: int
    potential_before: int
    potential_after: int

    @property
    def slack(self) -> int:
        return self.amortized + self.potential_before - self.actual_cost - self.potential_after

    @property
    def passes(self) -> bool:
        return self.slack >= 0

    def csv_row(self) -> str:
        return (
            f"{self.op},{self.size},{self.actual_cost},{self.amortized},"
            f"{self.potential_before},{self.potential_after},{self.slack}"
        )


CSV_HEADER = "# ledger v1\nop,n,f_t,f_at,P_before,P_after,slack"


def check_op_inequality(
    scheme: AmortizedScheme, op_name: str, structure: Any, arg: Any = None
) -> tuple[OpLedgerEntry, Any]:
    """Run one instrumented operation and produce its ledger entry.

    Also returns the output structure so that callers can chain checks.
    """
    if not scheme.precondition(structure):
        raise PreconditionViolated(f"{scheme.name}: structural precondition failed")
    op = scheme.ops[op_name]
    p_before = scheme.potential(structure)
    if p_before < 0:
        raise HarnessError("potential went negative")
    size = scheme.size_measure(structure)
    new_structure, cost = op.apply(structure, arg)
    p_after = scheme.potential(new_structure)
    if p_after < 0:
        raise HarnessError("potential went negative")
    entry = OpLedgerEntry(
        op=op_name,
        size=size,
        actual_cost=cost,
        amortized=op.amortized_bound(size),
        potential_before=p_before,
        potential_after=p_after,
    )
    return entry, new_structure


@dataclass
class SequenceReport:
    scheme: str
    entries: list[OpLedgerEntry]
    initial_potential: int
    final_potential: int
    seed: Optional[int] = None
    ops_replay: Optional[list] = None

    @property
    def total_actual(self) -> int:
        return sum(e.actual_cost for e in self.entries)

    @property
    def total_amortized(self) -> int:
        return sum(e.amortized for e in self.entries)

    @property
    def telescoped_ok(self) -> bool:
        return self.total_actual <= (
            self.total_amortized + self.initial_potential - self.final_potential
        )

    @property
    def per_op_ok(self) -> bool:
        return all(e.passes for e in self.entries)

    @property
    def passed(self) -> bool:
        return self.per_op_ok and self.telescoped_ok

    def first_failure(self) -> Optional[OpLedgerEntry]:
        for e in self.entries:
            if not e.passes:
                return e
        return None

    def render_failure(self) -> str:
        entry = self.first_failure()
        if entry is None and self.passed:
            return "no failure"
        lines = [f"scheme: {self.scheme}", f"seed: {self.seed}"]
        if entry is not None:
            lines.append(
                f"failing op: {entry.op} at size {entry.size}, slack {entry.slack}"
            )
        if self.ops_replay is not None:
            lines.append("replay: " + "; ".join(f"{op}({a!r})" for op, a in self.ops_replay))
        return "\n".join(lines)

    def to_csv(self) -> str:
        rows = [CSV_HEADER]
        rows.extend(e.csv_row() for e in self.entries)
        return "\n".join(rows) + "\n"


def run_sequence(
    scheme: AmortizedScheme,
    ops: Sequence[tuple[str, Any]],
    initial: Any,
    seed: Optional[int] = None,
) -> SequenceReport:
    """Apply the operations in order, collecting every ledger entry plus the
    telescoped total check."""
    structure = initial
    entries = []
    p0 = scheme.potential(initial)
    for op_name, arg in ops:
        entry, structure = check_op_inequality(scheme, op_name, structure, arg)
        entries.append(entry)
    return SequenceReport(
        scheme=scheme.name,
        entries=entries,
        initial_potential=p0,
        final_potential=scheme.potential(structure),
        seed=seed,
        ops_replay=list(ops),
    )


@dataclass(frozen=True)
class CorpusItem:
    op: str
    structure: Any
    arg: Any


def collect_corpus(
    scheme: AmortizedScheme, ops: Sequence[tuple[str, Any]], initial: Any
) -> list[CorpusItem]:
    """Record the (operation, input structure, argument) instances a
    sequence visits, for use by the multiplier search."""
    structure = initial
    corpus = []
    for op_name, arg in ops:
        corpus.append(CorpusItem(op_name, structure, arg))
        _, structure = check_op_inequality(scheme, op_name, structure, arg)
    return corpus


@dataclass(frozen=True)
class MultiplierResult:
    multiplier: int
    binding: OpLedgerEntry  # tightest-slack instance at the returned K


def _measure_corpus(
    scheme: AmortizedScheme, corpus: Sequence[CorpusItem]
) -> list[tuple[str, int, int, int, int]]:
    measured = []
    for item in corpus:
        op = scheme.ops[item.op]
        p_before = scheme.potential(item.structure)
        size = scheme.size_measure(item.structure)
        new_structure, cost = op.apply(item.structure, item.arg)
        measured.append((item.op, size, cost, p_before, scheme.potential(new_structure)))
    return measured


def _entries_at(measured, shape: Callable[[int], int], k: int) -> list[OpLedgerEntry]:
    return [
        OpLedgerEntry(op, size, cost, k * shape(size), p_before, p_after)
        for op, size, cost, p_before, p_after in measured
    ]


def minimal_multiplier(
    scheme: AmortizedScheme,
    shape: Callable[[int], int],
    corpus: Sequence[CorpusItem],
    k_max: int = 1024,
) -> MultiplierResult:
    """Binary search the smallest K for which K * shape(n) passes the corpus.

    Slack is monotone in K because shape >= 1 everywhere it is evaluated;
    the corpus is measured once since costs do not depend on K.
    """
    if not corpus:
        raise ValueError("empty corpus")
    measured = _measure_corpus(scheme, corpus)

    def passes(k: int) -> bool:
        return all(e.passes for e in _entries_at(measured, shape, k))

    if not passes(k_max):
        raise NoMultiplier(f"no multiplier up to {k_max} covers the corpus")
    lo, hi = 1, k_max
    while lo < hi:
        mid = (lo + hi) // 2
        if passes(mid):
            hi = mid
        else:
            lo = mid + 1
    entries = _entries_at(measured, shape, lo)
    binding = min(entries, key=lambda e: e.slack)
    return MultiplierResult(lo, binding)
