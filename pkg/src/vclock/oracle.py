"""Ground-truth causality model used to verify the clock implementation.

Histories are explicit event DAGs: each event is a local update or the
receipt of an earlier event's message, and happened-before is plain graph
reachability with no clocks involved. Replaying a history through the core
operations and comparing the resulting clock order against reachability is
the equivalence check; on un-pruned histories any disagreement is a clock
bug.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Sequence

from . import core
from ._backend import kernels
from .core import FixedClock, Ordering, PruneBounds, VClock

__all__ = [
    "MAX_ENUM_ACTORS",
    "MAX_ENUM_EVENTS",
    "EnumerationBudgetError",
    "EventRecord",
    "History",
    "Violation",
    "actor_name",
    "build_history",
    "check_equivalence",
    "enumerate_histories",
    "happened_before",
    "random_history",
    "replay_clocks",
]

MAX_ENUM_EVENTS = 7
MAX_ENUM_ACTORS = 3

_DOMINATED = kernels.DOMINATED
_CONCURRENT = kernels.CONCURRENT
_ORDERINGS = (Ordering.EQUAL, Ordering.DESCENDS, Ordering.DOMINATED, Ordering.CONCURRENT)
_MIRROR = (Ordering.EQUAL, Ordering.DOMINATED, Ordering.DESCENDS, Ordering.CONCURRENT)


class EnumerationBudgetError(ValueError):
    """Requested exhaustive enumeration exceeds the fixed budget."""


@dataclass(frozen=True)
class EventRecord:
    """One node of the happened-before DAG.

    received_from is None for a local update, otherwise the id of the
    earlier event (by another actor) whose message this event receives.
    predecessors holds the actor's previous event (if any) plus the sender.
    clock is the snapshot taken at this event during replay.
    """

    id: int
    actor: str
    received_from: int | None
    predecessors: frozenset[int]
    clock: VClock


@dataclass(frozen=True)
class History:
    """Events in topological order (predecessors reference lower indices)."""

    events: tuple[EventRecord, ...]
    actors: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.events)


class Violation(NamedTuple):
    """A pair of events whose graph relation and clock relation disagree."""

    left: int
    right: int
    graph: str  # hb | concurrent | inverse
    clocks: Ordering

    def render(self) -> str:
        return f"VIOLATION e{self.left} e{self.right} graph={self.graph} clocks={self.clocks.value}"


def actor_name(index: int) -> str:
    """Canonical actor name for an index: a, b, c, ... then a26, a27, ..."""
    if index < 26:
        return string.ascii_lowercase[index]
    return f"a{index}"


def _replay(
    steps: Sequence[tuple[str, int | None]],
    prune_at: Mapping[int, PruneBounds] | None = None,
) -> list[VClock]:
    """Compute every event's snapshot via core merge + increment.

    Logical time is the event index. prune_at maps event ids to bounds
    applied to that event's snapshot right after it is taken, for studying
    the causality loss pruning introduces.
    """
    snapshots: list[VClock] = []
    last_by_actor: dict[str, int] = {}
    for i, (actor, received_from) in enumerate(steps):
        base = core.fresh()
        prev = last_by_actor.get(actor)
        if prev is not None:
            base = snapshots[prev]
        if received_from is not None:
            base = core.merge(base, snapshots[received_from])
        snap = core.increment(actor, base, FixedClock(i))
        if prune_at is not None and i in prune_at:
            snap = core.prune(snap, i, prune_at[i])
        snapshots.append(snap)
        last_by_actor[actor] = i
    return snapshots


def build_history(
    steps: Sequence[tuple[str, int | None]],
    prune_at: Mapping[int, PruneBounds] | None = None,
) -> History:
    """Build a History from (actor, received_from) steps.

    received_from must point at an earlier event of a different actor.
    Snapshots are replayed with logical time = event index; prune_at, when
    given, is applied during the replay and the pruned snapshots are stored.
    """
    for i, (actor, received_from) in enumerate(steps):
        if not core.is_valid_actor(actor):
            raise core.InvalidActorError(f"invalid actor token: {actor!r}")
        if received_from is not None:
            if not 0 <= received_from < i:
                raise ValueError(
                    f"event {i} receives from {received_from}, which is not an earlier event"
                )
            if steps[received_from][0] == actor:
                raise ValueError(
                    f"event {i} receives from its own actor {actor!r}; messages cross actors"
                )
    last_by_actor: dict[str, int] = {}
    actors: list[str] = []
    records: list[EventRecord] = []
    snapshots = _replay(steps, prune_at)
    for i, (actor, received_from) in enumerate(steps):
        preds = set()
        prev = last_by_actor.get(actor)
        if prev is not None:
            preds.add(prev)
        if received_from is not None:
            preds.add(received_from)
        if actor not in last_by_actor:
            actors.append(actor)
        records.append(
            EventRecord(
                id=i,
                actor=actor,
                received_from=received_from,
                predecessors=frozenset(preds),
                clock=snapshots[i],
            )
        )
        last_by_actor[actor] = i
    return History(events=tuple(records), actors=tuple(actors))


def replay_clocks(
    h: History, prune_at: Mapping[int, PruneBounds] | None = None
) -> dict[int, VClock]:
    """Recompute every event's snapshot from the DAG structure.

    Ignores the snapshots stored on the history; for a history built without
    prune injection the result matches them exactly.
    """
    steps = [(ev.actor, ev.received_from) for ev in h.events]
    snapshots = _replay(steps, prune_at)
    return {i: snap for i, snap in enumerate(snapshots)}


def _ancestor_masks(h: History) -> list[int]:
    """Bitmask per event of every event in its causal past."""
    masks = [0] * len(h.events)
    for ev in h.events:
        m = 0
        for p in ev.predecessors:
            m |= masks[p] | (1 << p)
        masks[ev.id] = m
    return masks


def happened_before(h: History, e1: int, e2: int) -> bool:
    """True iff e1 is in e2's causal past. Irreflexive; pure graph reachability."""
    n = len(h.events)
    for e in (e1, e2):
        if not isinstance(e, int) or not 0 <= e < n:
            raise ValueError(f"unknown event id: {e!r}")
    if e1 == e2:
        return False
    return bool(_ancestor_masks(h)[e2] >> e1 & 1)


def check_equivalence(h: History) -> list[Violation]:
    """Compare graph causality against clock order for every event pair.

    For events i before j in the graph, j's snapshot must strictly dominate
    i's; for graph-concurrent pairs the snapshots must compare Concurrent.
    Each violating pair is reported in both orientations. An empty list
    means the clocks agree with the graph everywhere.
    """
    masks = _ancestor_masks(h)
    entry_seqs = [ev.clock.entries for ev in h.events]
    compare_entries = kernels.compare_entries
    violations: list[Violation] = []
    n = len(entry_seqs)
    for j in range(n):
        mask_j = masks[j]
        entries_j = entry_seqs[j]
        for i in range(j):
            code = compare_entries(entry_seqs[i], entries_j)
            if mask_j >> i & 1:
                if code == _DOMINATED:
                    continue
                graph, mirror_graph = "hb", "inverse"
            else:
                if code == _CONCURRENT:
                    continue
                graph = mirror_graph = "concurrent"
            violations.append(Violation(i, j, graph, _ORDERINGS[code]))
            violations.append(Violation(j, i, mirror_graph, _MIRROR[code]))
    return violations


def enumerate_histories(max_events: int, max_actors: int) -> Iterator[History]:
    """Exhaustively yield every non-empty history within the bounds.

    Covers 1..max_events events over at most max_actors actors. Actor names
    are canonicalized by order of first appearance, which is the only
    isomorphism reduction applied. Deterministic order.
    """
    if max_events > MAX_ENUM_EVENTS or max_actors > MAX_ENUM_ACTORS:
        raise EnumerationBudgetError(
            f"budget exceeded: at most {MAX_ENUM_EVENTS} events over "
            f"{MAX_ENUM_ACTORS} actors, requested {max_events} over {max_actors}"
        )
    if max_events < 0 or max_actors < 0:
        raise ValueError("bounds must be non-negative")
    names = [actor_name(i) for i in range(max_actors)]
    steps: list[tuple[str, int | None]] = []

    def grow(used: int) -> Iterator[History]:
        depth = len(steps)
        if depth == max_events:
            return
        for actor_idx in range(min(used + 1, max_actors)):
            actor = names[actor_idx]
            new_used = max(used, actor_idx + 1)
            sources: list[int | None] = [None]
            sources.extend(j for j in range(depth) if steps[j][0] != actor)
            for received_from in sources:
                steps.append((actor, received_from))
                yield build_history(tuple(steps))
                yield from grow(new_used)
                steps.pop()

    return grow(0)


def random_history(seed: int, events: int, actors: int) -> History:
    """Deterministic pseudo-random history: same arguments, same history.

    Each event picks a uniform actor; when earlier events by other actors
    exist it receives from a uniform one of them with probability 1/2.
    """
    if events < 0:
        raise ValueError("events must be >= 0")
    if actors < 1:
        raise ValueError("actors must be >= 1")
    rng = random.Random(seed)
    names = [actor_name(i) for i in range(actors)]
    steps: list[tuple[str, int | None]] = []
    for i in range(events):
        actor = names[rng.randrange(actors)]
        candidates = [j for j in range(i) if steps[j][0] != actor]
        received_from: int | None = None
        if candidates and rng.random() < 0.5:
            received_from = candidates[rng.randrange(len(candidates))]
        steps.append((actor, received_from))
    return build_history(tuple(steps))
