"""Combinatorial 2D isostaticity and the 3D subgraph count scan.

A generic 2D framework is isostatic exactly when its graph is
(2,3)-tight: b = 2j - 3 and no subset of bars spans fewer than the
count allows.  The pebble game decides that in O(j*b) without
enumerating subsets.  With symmetry, tightness plus a handful of
fixed-component counts upgrades the necessary conditions to sufficient
ones for some groups; those verdicts carry their epistemic status,
because for the reflection-rich groups the sufficiency is conjectured,
not proved.  In 3D no counting characterization exists, so the best
cheap certificate is an exhaustive scan of small connected subgraphs
for count violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import Framework
from .errors import (
    CapExceeded,
    DanglingEndpoint,
    DuplicateBar,
    GroupOutsideWhitelist,
    SelfLoop,
)
from .maxwell import WHITELIST_2D, ConditionCheck, isostatic_necessary
from .symdetect import PointGroupInfo, detect_point_group

_SCAN_BUDGET = 2_000_000
_SCAN_MAX_CAP = 12

_THEOREM_GROUPS = frozenset({"C1", "Cs", "C2", "C3"})
_CONJECTURE_GROUPS = frozenset({"C2v", "C3v"})


@dataclass(frozen=True)
class Graph:
    """A bare bar-joint incidence structure, no coordinates.

    Edges are stored sorted, low id first, mirroring how bars come out
    of a framework, so edge index k of a framework-derived graph is bar
    id k.
    """

    joint_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if u == v:
                raise SelfLoop(f"edge ({u}, {v}) joins a joint to itself")
            if not (0 <= u < self.joint_count and 0 <= v < self.joint_count):
                raise DanglingEndpoint(
                    f"edge ({u}, {v}) references a joint outside "
                    f"0..{self.joint_count - 1}"
                )
            if u > v:
                raise ValueError(f"edge ({u}, {v}) must be stored low id first")
            if (u, v) in seen:
                raise DuplicateBar(f"edge ({u}, {v}) appears twice")
            seen.add((u, v))

    @classmethod
    def from_framework(cls, f: Framework) -> "Graph":
        return cls(
            joint_count=f.joint_count,
            edges=tuple(bar.ends for bar in f.bars),
        )


class PebbleState:
    """Mutable pebble-game position: pebbles per joint plus edge orientations.

    Placing an edge costs one pebble from its tail, so the total of
    free pebbles and placed edges is pinned at 2j throughout.
    """

    def __init__(self, joint_count: int) -> None:
        self.joint_count = joint_count
        self.pebbles = [2] * joint_count
        self.out: list[set[int]] = [set() for _ in range(joint_count)]
        self.placed = 0

    def check_invariant(self) -> None:
        total = sum(self.pebbles)
        if total + self.placed != 2 * self.joint_count:
            raise AssertionError(
                f"{total} pebbles + {self.placed} edges != "
                f"{2 * self.joint_count}"
            )
        if any(p < 0 or p > 2 for p in self.pebbles):
            raise AssertionError(f"pebble counts out of range: {self.pebbles}")

    def _dfs_free_pebble(self, root: int, blocked: int) -> list[int] | None:
        """Depth-first path from root to any joint with a free pebble.

        Neighbors are explored in ascending id order and the blocked
        joint (the edge's other endpoint) is never entered, so results
        are deterministic and its pebbles are never raided.
        """
        visited = {root, blocked}
        path = [root]

        def walk(x: int) -> list[int] | None:
            for y in sorted(self.out[x]):
                if y in visited:
                    continue
                visited.add(y)
                path.append(y)
                if self.pebbles[y] > 0:
                    return list(path)
                found = walk(y)
                if found is not None:
                    return found
                path.pop()
            return None

        return walk(root)

    def _pull_pebble(self, root: int, blocked: int) -> bool:
        found = self._dfs_free_pebble(root, blocked)
        if found is None:
            return False
        self.pebbles[found[-1]] -= 1
        self.pebbles[root] += 1
        for a, b in zip(found, found[1:]):
            self.out[a].remove(b)
            self.out[b].add(a)
        return True

    def gather(self, u: int, v: int) -> bool:
        """Try to collect 4 pebbles on the pair (u, v)."""
        while self.pebbles[u] + self.pebbles[v] < 4:
            if self.pebbles[u] < 2 and self._pull_pebble(u, v):
                continue
            if self.pebbles[v] < 2 and self._pull_pebble(v, u):
                continue
            return False
        return True

    def place(self, u: int, v: int) -> None:
        tail = u if self.pebbles[u] > 0 else v
        head = v if tail == u else u
        self.pebbles[tail] -= 1
        self.out[tail].add(head)
        self.placed += 1

    def _reach(self, roots: list[int], blocked: int | None) -> set[int]:
        region: set[int] = set()
        stack = list(roots)
        while stack:
            x = stack.pop()
            if x in region:
                continue
            region.add(x)
            stack.extend(y for y in self.out[x] if y != blocked)
        return region

    def failure_region(self, u: int, v: int) -> set[int]:
        """The joint set certifying that the pair (u, v) cannot be braced.

        When both endpoint searches ran and failed, every joint
        reachable from the pair is pebble-free beyond the endpoints and
        the region is closed under placed edges.  When one endpoint
        was skipped because it already holds 2 pebbles, only the other
        endpoint's blocked search failed, and the sound region is its
        reach plus the saturated endpoint.  Either way the bars induced
        on the region, plus the rejected bar, exceed the subset count.
        """
        if self.pebbles[u] == 2:
            return self._reach([v], blocked=u) | {u}
        if self.pebbles[v] == 2:
            return self._reach([u], blocked=v) | {v}
        return self._reach([u, v], blocked=None)


@dataclass(frozen=True)
class SparsityReport:
    """Outcome of the (2,3) pebble game on one graph."""

    verdict: str
    joint_count: int
    bar_count: int
    free_pebbles: int
    witness_joint_ids: tuple[int, ...] = ()
    witness_bar_ids: tuple[int, ...] = ()
    witness_joint_total: int = 0
    witness_bar_total: int = 0

    def __post_init__(self) -> None:
        if self.verdict == "dependent":
            js, bs = self.witness_joint_total, self.witness_bar_total
            if bs <= 2 * js - 3:
                raise AssertionError(
                    f"witness with {bs} bars on {js} joints does not "
                    "violate the subset count"
                )
        elif self.witness_bar_ids or self.witness_joint_ids:
            raise AssertionError("witness present on a non-dependent verdict")


def pebble_game_2_3(
    g: Framework | Graph,
    on_move: Callable[[PebbleState], None] | None = None,
) -> SparsityReport:
    """Decide (2,3)-tightness by the pebble game.

    Bars are offered in id order; a bar is placed when 4 pebbles can be
    gathered on its endpoints.  The first rejected bar stops the game
    and its reachability region becomes the dependence witness.
    on_move, when given, is called after every completed move so tests
    can audit the invariant.
    """
    graph = Graph.from_framework(g) if isinstance(g, Framework) else g
    j = graph.joint_count
    if j < 2:
        raise ValueError(f"the pebble game needs at least 2 joints, got {j}")
    state = PebbleState(j)
    if on_move is not None:
        on_move(state)
    for bar_id, (u, v) in enumerate(graph.edges):
        if not state.gather(u, v):
            region = state.failure_region(u, v)
            js = len(region)
            # every offered bar so far was placed, so the induced bars
            # are exactly the placed ones inside the region, plus the
            # rejected bar itself
            witness_bars = [
                k
                for k, (a, b) in enumerate(graph.edges[: bar_id + 1])
                if a in region and b in region
            ]
            bs = len(witness_bars)
            return SparsityReport(
                verdict="dependent",
                joint_count=j,
                bar_count=len(graph.edges),
                free_pebbles=sum(state.pebbles),
                witness_joint_ids=tuple(sorted(region)),
                witness_bar_ids=tuple(witness_bars),
                witness_joint_total=js,
                witness_bar_total=bs,
            )
        state.place(u, v)
        if on_move is not None:
            on_move(state)
    free = sum(state.pebbles)
    verdict = "tight" if free == 3 else "independent-but-underbraced"
    return SparsityReport(
        verdict=verdict,
        joint_count=j,
        bar_count=len(graph.edges),
        free_pebbles=free,
    )


@dataclass(frozen=True)
class SymmetricLamanReport:
    """Sufficiency verdict for a symmetric 2D framework.

    passed means: the graph is (2,3)-tight and the fixed-component
    counts of the detected group hold.  For C1, Cs, C2 and C3 that is a
    proved characterization of isostaticity at configurations generic
    subject to the symmetry; for C2v and C3v it is conjectured.  The
    epistemic tag is part of the schema so the distinction survives
    serialization.
    """

    group: PointGroupInfo = field(repr=False, compare=False)
    schoenflies: str = ""
    pebble: SparsityReport | None = None
    count_checks: tuple[ConditionCheck, ...] = ()
    passed: bool = False
    epistemic: str = ""
    notes: tuple[str, ...] = ()


def symmetric_laman(
    f: Framework,
    group: PointGroupInfo | None = None,
    geom_tol: float | None = None,
) -> SymmetricLamanReport:
    """Combinatorial sufficiency check for symmetric 2D frameworks."""
    if f.dimension != 2:
        raise ValueError("the symmetric sufficiency check is 2D only")
    if group is None:
        group = detect_point_group(f, geom_tol)
    label = group.schoenflies
    if label not in WHITELIST_2D:
        raise GroupOutsideWhitelist(
            f"no 2D isostatic framework has group {label}; the admissible "
            "groups are " + ", ".join(sorted(WHITELIST_2D))
        )
    pebble = pebble_game_2_3(f)
    necessary = isostatic_necessary(f, group, geom_tol)
    passed = pebble.verdict == "tight" and necessary.passed
    epistemic = "theorem-backed" if label in _THEOREM_GROUPS else "conjectural"
    notes = [
        "sufficiency assumes coordinates generic subject to the symmetry; "
        "special positions can still introduce extra mechanisms"
    ]
    if epistemic == "conjectural":
        notes.append(
            f"for {label} the sufficiency of these conditions is "
            "conjectured, not proved; a pass is not an unqualified "
            "isostaticity claim"
        )
    if pebble.verdict != "tight":
        notes.append(f"the underlying graph is {pebble.verdict}, not tight")
    for check in necessary.checks:
        if not check.passed:
            notes.append(
                f"count condition failed for class {check.class_label}: "
                f"{check.equation} (lhs {check.lhs}, rhs {check.rhs})"
            )
    return SymmetricLamanReport(
        group=group,
        schoenflies=label,
        pebble=pebble,
        count_checks=necessary.checks,
        passed=passed,
        epistemic=epistemic,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class CountViolation:
    """A connected induced subgraph with more bars than its count allows."""

    joint_ids: tuple[int, ...]
    bar_ids: tuple[int, ...]
    joint_total: int
    bar_total: int
    slack: int

    def __post_init__(self) -> None:
        if self.slack >= 0:
            raise AssertionError("a violation must have negative slack")


def subgraph_maxwell_scan_3d(
    f: Framework, max_subgraph_joints: int = 8
) -> list[CountViolation]:
    """Scan small connected induced subgraphs for 3j' - b' - 6 < 0.

    Each hit certifies a state of self-stress.  An empty result proves
    nothing: the scan is a necessary screen, bounded by the cap, and 3D
    has no subset count characterizing isostaticity.
    """
    if f.dimension != 3:
        raise ValueError("the subgraph count scan applies to 3D frameworks")
    cap = int(max_subgraph_joints)
    if cap < 3:
        raise ValueError(f"cap {cap} is below the smallest meaningful subgraph")
    if cap > _SCAN_MAX_CAP:
        raise CapExceeded(
            f"cap {cap} exceeds the exhaustive enumeration bound "
            f"{_SCAN_MAX_CAP}"
        )
    n = f.joint_count
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in (bar.ends for bar in f.bars):
        adj[u].add(v)
        adj[v].add(u)

    violations: list[CountViolation] = []
    visited_budget = _SCAN_BUDGET

    def record(subset: frozenset[int]) -> None:
        js = len(subset)
        if js < 3:
            return
        bar_ids = tuple(
            k
            for k, bar in enumerate(f.bars)
            if bar.ends[0] in subset and bar.ends[1] in subset
        )
        slack = 3 * js - len(bar_ids) - 6
        if slack < 0:
            violations.append(
                CountViolation(
                    joint_ids=tuple(sorted(subset)),
                    bar_ids=bar_ids,
                    joint_total=js,
                    bar_total=len(bar_ids),
                    slack=slack,
                )
            )

    # enumerate each connected induced subgraph exactly once: grow only
    # with joints above the anchor, and never revisit an extension
    # candidate that an earlier branch already declined
    def extend(
        subset: frozenset[int], extension: list[int], anchor: int
    ) -> None:
        nonlocal visited_budget
        visited_budget -= 1
        if visited_budget < 0:
            raise CapExceeded(
                f"more than {_SCAN_BUDGET} connected subgraphs within "
                f"cap {cap}; the framework is too large for an "
                "exhaustive scan"
            )
        record(subset)
        if len(subset) >= cap:
            return
        ext = list(extension)
        boundary = {x for y in subset for x in adj[y]}
        while ext:
            w = ext.pop(0)
            new_ext = ext + sorted(
                x
                for x in adj[w]
                if x > anchor and x not in subset and x not in boundary
            )
            extend(subset | {w}, new_ext, anchor)

    for v0 in range(n):
        extend(
            frozenset({v0}),
            sorted(x for x in adj[v0] if x > v0),
            v0,
        )

    violations.sort(key=lambda c: (c.joint_total, c.joint_ids))
    return violations
