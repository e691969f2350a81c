"""Boundary codecs: wire text for clocks and the unary (Peano) numeral codec.

The wire form is the canonical text defined by the core module. The unary
codec exists to measure what nested-constructor numerals cost: depth equals
the number denoted, so materializing a modern UNIX timestamp is a
gigabyte-scale object graph.
"""

from __future__ import annotations

import re

from .core import VClock, canonical_text, fresh, is_valid_actor

__all__ = [
    "ActorTokenError",
    "CountRangeError",
    "DecodeError",
    "DuplicateActorError",
    "MalformedEntryError",
    "NumericFieldError",
    "PeanoCapacityError",
    "PeanoNumeral",
    "Successor",
    "Zero",
    "ZERO",
    "MATERIALIZATION_LIMIT",
    "decode",
    "encode",
    "natural_to_peano",
    "peano_cost",
    "peano_to_natural",
]

EMPTY_FORM = "-"

_DIGITS = re.compile(r"[0-9]+\Z")


class DecodeError(ValueError):
    """Base class for wire-text parse failures."""


class MalformedEntryError(DecodeError):
    """An entry does not have exactly three ':'-separated fields."""


class NumericFieldError(DecodeError):
    """Count or timestamp field is not a plain decimal number."""


class CountRangeError(DecodeError):
    """Count field is zero; present entries always count at least one."""


class ActorTokenError(DecodeError):
    """Actor field violates the token rule."""


class DuplicateActorError(DecodeError):
    """The same actor appears in more than one entry."""


def encode(v: VClock) -> str:
    """Render a clock as canonical wire text."""
    return canonical_text(v)


def decode(text: str) -> VClock:
    """Parse wire text into a clock, re-sorting entries if needed.

    Raises a distinct DecodeError subclass per defect: wrong field count,
    non-numeric count/timestamp, zero count, bad actor token, duplicate
    actor.
    """
    if text == EMPTY_FORM:
        return fresh()
    entries: list[tuple[str, int, int]] = []
    seen: set[str] = set()
    for field in text.split(";"):
        parts = field.split(":")
        if len(parts) != 3:
            raise MalformedEntryError(
                f"expected actor:count:timestamp, got {field!r}"
            )
        actor, count_text, timestamp_text = parts
        if not is_valid_actor(actor):
            raise ActorTokenError(f"bad actor token {actor!r} in entry {field!r}")
        if not _DIGITS.match(count_text) or not _DIGITS.match(timestamp_text):
            raise NumericFieldError(
                f"count and timestamp must be decimal digits in entry {field!r}"
            )
        count = int(count_text)
        if count < 1:
            raise CountRangeError(f"count must be >= 1 in entry {field!r}")
        if actor in seen:
            raise DuplicateActorError(f"duplicate actor {actor!r}")
        seen.add(actor)
        entries.append((actor, count, int(timestamp_text)))
    return VClock(entries)


# --- unary numerals -------------------------------------------------------

MATERIALIZATION_LIMIT = 10_000_000


class PeanoCapacityError(ValueError):
    """Refusal to materialize a numeral too deep to hold in memory sanely."""


class PeanoNumeral:
    """A unary numeral: either Zero or a Successor wrapping another numeral.

    Equality is structural and iterative, so deep numerals compare without
    recursion.
    """

    __slots__ = ()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PeanoNumeral):
            return NotImplemented
        a: PeanoNumeral = self
        b: PeanoNumeral = other
        while True:
            if a is b:
                return True
            a_succ = isinstance(a, Successor)
            if a_succ != isinstance(b, Successor):
                return False
            if not a_succ:
                return True
            a = a.pred  # type: ignore[attr-defined]
            b = b.pred  # type: ignore[attr-defined]

    __hash__ = None  # type: ignore[assignment]


class Zero(PeanoNumeral):
    """The base numeral, denoting 0."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "Zero()"


class Successor(PeanoNumeral):
    """One constructor layer: denotes 1 + whatever it wraps."""

    __slots__ = ("pred",)

    def __init__(self, pred: PeanoNumeral):
        self.pred = pred

    def __repr__(self) -> str:
        return f"Successor(depth={peano_to_natural(self)})"


ZERO = Zero()


def natural_to_peano(n: int) -> PeanoNumeral:
    """Materialize the numeral of depth n (one constructor node per unit).

    Refuses n above MATERIALIZATION_LIMIT: cost grows linearly and a
    timestamp-sized n would need gigabytes. Construction is iterative, so
    depth is bounded by memory, not the call stack.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"expected a non-negative integer, got {n!r}")
    if n > MATERIALIZATION_LIMIT:
        raise PeanoCapacityError(
            f"refusing to materialize a numeral of depth {n} "
            f"(limit {MATERIALIZATION_LIMIT}); see peano_cost for the size estimate"
        )
    node: PeanoNumeral = ZERO
    for _ in range(n):
        node = Successor(node)
    return node


def peano_to_natural(p: PeanoNumeral) -> int:
    """Count a numeral's depth by full, iterative descent."""
    n = 0
    node = p
    while isinstance(node, Successor):
        n += 1
        node = node.pred
    if not isinstance(node, Zero):
        raise TypeError(f"not a Peano numeral: {node!r}")
    return n


def peano_cost(n: int) -> int:
    """Constructor-node count of the numeral for n, without materializing.

    The numeral for n is n Successor nodes over one Zero, so the cost is
    n + 1 exactly. Usable at timestamp scale where materialization is not.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"expected a non-negative integer, got {n!r}")
    return n + 1
