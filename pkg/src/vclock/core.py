"""Vector clock values and their operations.

A vector clock is an immutable, canonically ordered collection of
(actor, count, timestamp) entries. Counts order events causally; timestamps
exist only to drive pruning and never affect comparison. All operations are
pure functions; the single effectful dependency, the time source, is
injected as a :class:`ClockSource`.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Protocol

from ._backend import kernels

__all__ = [
    "ClockEntry",
    "ClockSource",
    "FixedClock",
    "InvalidActorError",
    "Ordering",
    "PruneBounds",
    "StepClock",
    "SystemClock",
    "VClock",
    "all_nodes",
    "canonical_text",
    "compare",
    "descends",
    "equal",
    "fresh",
    "get_counter",
    "get_timestamp",
    "increment",
    "is_valid_actor",
    "merge",
    "prune",
]


class InvalidActorError(ValueError):
    """Actor token is empty or contains whitespace, ':', ';' or unprintables."""


class ClockEntry(NamedTuple):
    """One actor's slot in a vector clock."""

    actor: str
    count: int
    timestamp: int


class Ordering(Enum):
    """Four-way result of comparing two clocks.

    DESCENDS means the left clock strictly dominates the right one;
    DOMINATED is the mirror image; CONCURRENT means neither covers the other.
    """

    EQUAL = "Equal"
    DESCENDS = "Descends"
    DOMINATED = "Dominated"
    CONCURRENT = "Concurrent"


# kernel result code -> Ordering, index-aligned with the kernel constants
_ORDERINGS = (Ordering.EQUAL, Ordering.DESCENDS, Ordering.DOMINATED, Ordering.CONCURRENT)


def is_valid_actor(token: str) -> bool:
    """Check the actor lexical rule: non-empty, printable, no whitespace/':'/';'."""
    if not isinstance(token, str) or not token:
        return False
    for ch in token:
        if ch in ":;" or ch.isspace() or not ch.isprintable():
            return False
    return True


def _require_actor(token: str) -> None:
    if not is_valid_actor(token):
        raise InvalidActorError(f"invalid actor token: {token!r}")


class VClock:
    """Immutable vector clock: entries sorted by actor, one entry per actor.

    Structural equality (``==``) includes timestamps; the causal,
    timestamp-insensitive notion is :func:`equal`.
    """

    __slots__ = ("entries",)

    entries: tuple[ClockEntry, ...]

    def __init__(self, entries: Iterable[tuple[str, int, int]] = ()):
        items = []
        for entry in entries:
            actor, count, timestamp = entry
            _require_actor(actor)
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"entry count must be an integer >= 1, got {count!r}")
            if not isinstance(timestamp, int) or timestamp < 0:
                raise ValueError(f"entry timestamp must be an integer >= 0, got {timestamp!r}")
            items.append(ClockEntry(actor, int(count), int(timestamp)))
        items.sort(key=lambda e: e.actor)
        for prev, cur in zip(items, items[1:]):
            if prev.actor == cur.actor:
                raise ValueError(f"duplicate actor in clock: {cur.actor!r}")
        object.__setattr__(self, "entries", tuple(items))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("VClock is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VClock):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[ClockEntry]:
        return iter(self.entries)

    def __str__(self) -> str:
        return canonical_text(self)

    def __repr__(self) -> str:
        return f"VClock({canonical_text(self)!r})"


def _wrap(entries: tuple[ClockEntry, ...]) -> VClock:
    # fast path for entries already canonical; skips __init__ validation
    v = object.__new__(VClock)
    object.__setattr__(v, "entries", entries)
    return v


_EMPTY = _wrap(())


class ClockSource(Protocol):
    """Injected time provider; successive now() calls never decrease."""

    def now(self) -> int: ...


class SystemClock:
    """Wall-clock seconds since the epoch, clamped to be non-decreasing."""

    def __init__(self) -> None:
        self._last = 0

    def now(self) -> int:
        current = int(time.time())
        if current > self._last:
            self._last = current
        return self._last


class FixedClock:
    """Always reports the same instant. Handy for tests and replays."""

    def __init__(self, value: int):
        if value < 0:
            raise ValueError("timestamp must be >= 0")
        self._value = value

    def now(self) -> int:
        return self._value


class StepClock:
    """Logical time: starts at `start` and advances by `step` per call."""

    def __init__(self, start: int = 0, step: int = 1):
        if start < 0 or step < 0:
            raise ValueError("start and step must be >= 0")
        self._next = start
        self._step = step

    def now(self) -> int:
        value = self._next
        self._next += self._step
        return value


@dataclass(frozen=True, slots=True)
class PruneBounds:
    """The four pruning parameters.

    small: keep the clock untouched at or below this many entries.
    large: above this many entries, old-enough entries go regardless of age cap.
    young: entries younger than now - young are never removed.
    old:   entries older than now - old are removable even below `large`.
    """

    small: int
    large: int
    young: int
    old: int

    def __post_init__(self) -> None:
        for name in ("small", "large", "young", "old"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"prune bound {name} must be an integer >= 0, got {value!r}")
        if self.small > self.large:
            raise ValueError(f"prune bounds require small <= large, got {self.small} > {self.large}")
        if self.young > self.old:
            raise ValueError(f"prune bounds require young <= old, got {self.young} > {self.old}")


def fresh() -> VClock:
    """The empty vector clock."""
    return _EMPTY


def increment(actor: str, v: VClock, clock: ClockSource) -> VClock:
    """Advance `actor` by one event.

    A new actor enters with count 1; an existing actor's count rises by one.
    Either way the entry's timestamp becomes clock.now().
    """
    _require_actor(actor)
    now = clock.now()
    if not isinstance(now, int) or now < 0:
        raise ValueError(f"clock source produced a bad timestamp: {now!r}")
    now = int(now)
    entries = v.entries
    actors = [e.actor for e in entries]
    i = bisect_left(actors, actor)
    if i < len(entries) and entries[i].actor == actor:
        old = entries[i]
        updated = entries[:i] + (ClockEntry(actor, old.count + 1, now),) + entries[i + 1 :]
    else:
        updated = entries[:i] + (ClockEntry(actor, 1, now),) + entries[i:]
    return _wrap(updated)


def equal(v1: VClock, v2: VClock) -> bool:
    """Causal equality: identical (actor, count) pairs. Timestamps are ignored."""
    return kernels.equal_entries(v1.entries, v2.entries)


def descends(v1: VClock, v2: VClock) -> bool:
    """True iff v1 contains v2's causal history (pointwise counts >=).

    Non-strict: every clock descends itself, and every clock descends the
    empty clock.
    """
    return kernels.descends_entries(v1.entries, v2.entries)


def compare(v1: VClock, v2: VClock) -> Ordering:
    """Classify the pair as Equal, Descends, Dominated or Concurrent."""
    return _ORDERINGS[kernels.compare_entries(v1.entries, v2.entries)]


def merge(v1: VClock, v2: VClock, clock: ClockSource | None = None) -> VClock:
    """Least upper bound: per-actor maximum of counts and of timestamps.

    The clock source parameter is accepted for signature symmetry with
    increment but never consulted.
    """
    if not v1.entries:
        return v2
    if not v2.entries:
        return v1
    merged = kernels.merge_entries(v1.entries, v2.entries)
    return _wrap(tuple(ClockEntry(a, c, t) for a, c, t in merged))


def get_counter(actor: str, v: VClock) -> int:
    """The actor's count, or 0 when absent."""
    for entry in v.entries:
        if entry.actor == actor:
            return entry.count
    return 0


def get_timestamp(actor: str, v: VClock) -> int | None:
    """The actor's timestamp, or None when absent."""
    for entry in v.entries:
        if entry.actor == actor:
            return entry.timestamp
    return None


def all_nodes(v: VClock) -> list[str]:
    """All actors present in the clock, ascending."""
    return [entry.actor for entry in v.entries]


def prune(v: VClock, now: int, bounds: PruneBounds) -> VClock:
    """Shrink a clock under the size/age rule.

    Entries are examined oldest first (ties broken by actor token). The
    oldest entry is removed while all of the following hold for the current
    state: more than `small` entries remain; the clock is over `large`
    entries or the entry is older than now - old; and the entry is older
    than now - young. Survivors keep their counts and timestamps.
    """
    if not isinstance(bounds, PruneBounds):
        bounds = PruneBounds(*bounds)
    if not isinstance(now, int) or now < 0:
        raise ValueError(f"prune now must be an integer >= 0, got {now!r}")
    entries = v.entries
    size = len(entries)
    if size <= bounds.small:
        return v
    by_age = sorted(entries, key=lambda e: (e.timestamp, e.actor))
    young_cut = now - bounds.young
    old_cut = now - bounds.old
    idx = 0
    while size > bounds.small:
        oldest = by_age[idx]
        if oldest.timestamp >= young_cut:
            break
        if size <= bounds.large and oldest.timestamp >= old_cut:
            break
        idx += 1
        size -= 1
    if idx == 0:
        return v
    survivors = sorted(by_age[idx:], key=lambda e: e.actor)
    return _wrap(tuple(survivors))


def canonical_text(v: VClock) -> str:
    """The boundary form: 'actor:count:timestamp' entries joined by ';'.

    The empty clock renders as '-'. Actors ascend, so equal clock values
    always produce byte-identical text.
    """
    if not v.entries:
        return "-"
    return ";".join(f"{e.actor}:{e.count}:{e.timestamp}" for e in v.entries)
