"""Active index sets of a linear inequality system, and their enumeration.

For a system `A x <= b` the residual of row i at x is `a_i . x - b_i`, and the
active set at x collects the rows attaining the maximum residual.  Two
families of index sets drive every verdict downstream: the sets realizable as
active sets at points with strictly positive maximum residual, and those
realizable where the maximum residual is exactly zero.

Realizability of a candidate set is decided by an exact margin program, never
by nudging points with small epsilons: the candidate rows are pinned to a
common residual level and every other row is pushed below that level by a
maximized slack.  Enumeration walks subsets by increasing cardinality in
lexicographic order and prunes any subset (with all of its supersets) whose
equal-residual equality system is inconsistent; consistency is inherited by
subsets, which makes the pruning sound, while realizability itself is not
monotone and is therefore re-tested per subset.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence, TypeVar

from .lp import LinearProgram, LpStatus, solve_lp
from .rational import Mat, RationalLike, Vec, solve_linear

__all__ = [
    "IndexSet",
    "InequalitySystem",
    "Level",
    "ActiveSetFamily",
    "make_index_set",
    "residuals",
    "max_residual",
    "active_set",
    "realizability",
    "enumerate_active_sets",
    "maximal_sets",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Index sets are 1-based, sorted, duplicate-free tuples.
IndexSet = tuple[int, ...]

_T = TypeVar("_T")
_R = TypeVar("_R")


def make_index_set(indices: Iterable[int]) -> IndexSet:
    out = tuple(sorted(set(int(i) for i in indices)))
    if not out:
        raise ValueError("index set must be nonempty")
    if out[0] < 1:
        raise ValueError("indices are 1-based")
    return out


@dataclass(frozen=True)
class InequalitySystem:
    """The system `A x <= b`; rows of A and entries of b correspond 1-based."""

    A: Mat
    b: Vec

    def __post_init__(self) -> None:
        a = self.A if isinstance(self.A, Mat) else Mat.of(self.A)
        b = self.b if isinstance(self.b, Vec) else Vec.of(self.b)
        if b.dim != a.m:
            raise ValueError(f"offset vector has dimension {b.dim}, expected {a.m}")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def of(
        cls,
        rows: Iterable[Iterable[RationalLike]],
        offsets: Iterable[RationalLike],
    ) -> "InequalitySystem":
        return cls(Mat.of(rows), Vec.of(offsets))

    @property
    def m(self) -> int:
        return self.A.m

    @property
    def n(self) -> int:
        return self.A.n

    def rows_for(self, indices: IndexSet) -> list[Vec]:
        self.check_indices(indices)
        return [self.A.rows[i - 1] for i in indices]

    def check_indices(self, indices: IndexSet) -> None:
        if not indices:
            raise ValueError("index set must be nonempty")
        if any(not 1 <= i <= self.m for i in indices):
            raise ValueError(f"indices must lie in 1..{self.m}: {indices}")


def residuals(system: InequalitySystem, x: Vec) -> Vec:
    """Row residuals `a_i . x - b_i`."""
    if x.dim != system.n:
        raise ValueError(f"point has dimension {x.dim}, expected {system.n}")
    return Vec.of([row.dot(x) - system.b[i] for i, row in enumerate(system.A.rows)])


def max_residual(system: InequalitySystem, x: Vec) -> Fraction:
    """Largest row residual at x; nonpositive exactly on the feasible set."""
    return max(residuals(system, x))


def active_set(system: InequalitySystem, x: Vec) -> IndexSet:
    """1-based indices of the rows attaining the maximum residual at x."""
    values = residuals(system, x)
    top = max(values)
    return tuple(i + 1 for i, v in enumerate(values) if v == top)


class Level(Enum):
    """Residual level at which an active set is sought."""

    POSITIVE = "pos"
    ZERO = "zero"


@dataclass(frozen=True)
class ActiveSetFamily:
    """All realizable active sets at one level, with one witness point each."""

    level: Level
    sets: tuple[IndexSet, ...]
    witnesses: dict[IndexSet, Vec] = field(compare=False)

    def __contains__(self, indices: Iterable[int]) -> bool:
        return make_index_set(indices) in set(self.sets)


def realizability(system: InequalitySystem, indices: Iterable[int], level: Level) -> Vec | None:
    """Witness point whose active set is exactly `indices` at the given level.

    The margin program pins the candidate rows to one residual level t (t = 0
    for the zero level, t >= s for the positive level), forces every other row
    at least s below it, and maximizes s; the margin is capped at 1 to keep
    the program bounded, which changes nothing about the sign of its optimum.
    Returns None when no such point exists.
    """
    index_set = make_index_set(indices)
    system.check_indices(index_set)
    inside = set(index_set)
    n = system.n

    if level is Level.POSITIVE:
        width = n + 2  # x, level t, margin s
        t_col, s_col = n, n + 1
        eqs = []
        ineqs = []
        for i in range(1, system.m + 1):
            row = list(system.A.rows[i - 1].entries)
            if i in inside:
                eqs.append((Vec.of(row + [-1, 0]), system.b[i - 1]))
            else:
                ineqs.append((Vec.of(row + [-1, 1]), system.b[i - 1]))
        guard = [_ZERO] * width
        guard[t_col], guard[s_col] = -_ONE, _ONE
        ineqs.append((Vec.of(guard), _ZERO))  # s <= t keeps the level positive
    else:
        width = n + 1  # x, margin s
        s_col = n
        eqs = []
        ineqs = []
        for i in range(1, system.m + 1):
            row = list(system.A.rows[i - 1].entries)
            if i in inside:
                eqs.append((Vec.of(row + [0]), system.b[i - 1]))
            else:
                ineqs.append((Vec.of(row + [1]), system.b[i - 1]))
    cap = [_ZERO] * width
    cap[s_col] = _ONE
    ineqs.append((Vec.of(cap), _ONE))

    outcome = solve_lp(
        LinearProgram(
            objective=Vec.unit(width, s_col),
            eq_constraints=tuple(eqs),
            ineq_constraints=tuple(ineqs),
        )
    )
    if outcome.status is not LpStatus.OPTIMAL:
        return None
    assert outcome.optimal_value is not None and outcome.witness is not None
    if outcome.optimal_value <= 0:
        return None
    return Vec.of(outcome.witness.entries[:n])


def _equal_level_consistent(system: InequalitySystem, indices: IndexSet, level: Level) -> bool:
    """Consistency of the equality block that pins `indices` to one level."""
    if level is Level.POSITIVE:
        rows = [Vec.of(list(system.A.rows[i - 1].entries) + [-1]) for i in indices]
    else:
        rows = [system.A.rows[i - 1] for i in indices]
    rhs = Vec.of([system.b[i - 1] for i in indices])
    return solve_linear(Mat(tuple(rows)), rhs) is not None


def _map_ordered(fn: Callable[[_T], _R], items: Sequence[_T], max_workers: int | None) -> list[_R]:
    if max_workers is not None and max_workers > 1 and len(items) > 1:
        workers = min(max_workers, len(items))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def enumerate_active_sets(
    system: InequalitySystem,
    level: Level,
    *,
    prune: bool = True,
    max_workers: int | None = None,
) -> ActiveSetFamily:
    """All active sets realizable at the given level.

    Subsets are visited by increasing cardinality, lexicographically, so the
    output order is deterministic.  With `prune` enabled, subsets whose
    equal-residual system is inconsistent are recorded as dead cores and all
    of their supersets are skipped without further work; with `prune`
    disabled every nonempty subset runs the full margin program, which serves
    as the brute-force oracle in tests.  Worker threads only bound concurrent
    margin programs; results do not depend on the worker count.
    """
    m = system.m
    found: list[IndexSet] = []
    witnesses: dict[IndexSet, Vec] = {}
    dead_cores: list[set[int]] = []
    for size in range(1, m + 1):
        frontier: list[IndexSet] = []
        for combo in combinations(range(1, m + 1), size):
            if prune:
                as_set = set(combo)
                if any(core <= as_set for core in dead_cores):
                    continue
                if not _equal_level_consistent(system, combo, level):
                    dead_cores.append(as_set)
                    continue
            frontier.append(combo)
        results = _map_ordered(lambda c: realizability(system, c, level), frontier, max_workers)
        for combo, witness in zip(frontier, results):
            if witness is not None:
                found.append(combo)
                witnesses[combo] = witness
    return ActiveSetFamily(level=level, sets=tuple(found), witnesses=witnesses)


def maximal_sets(family: ActiveSetFamily | Sequence[IndexSet]) -> list[IndexSet]:
    """Inclusion-maximal members, in the family's deterministic order."""
    sets = list(family.sets) if isinstance(family, ActiveSetFamily) else [make_index_set(s) for s in family]
    as_sets = [set(s) for s in sets]
    out: list[IndexSet] = []
    for i, candidate in enumerate(as_sets):
        if any(i != j and candidate < other for j, other in enumerate(as_sets)):
            continue
        if any(candidate == other for other in as_sets[:i]):
            continue  # drop duplicates, keep the first occurrence
        out.append(sets[i])
    return out
