"""Vector clocks with pruning, plus the tooling to distrust them properly.

The core API is nine pure operations over immutable clock values. Around it:
a wire codec with a unary-numeral cost model, a graph-reachability oracle
that cross-checks clock comparisons against real causality, and a
deterministic replica simulator with a scenario script format.
"""

from ._backend import backend_name
from .core import (
    ClockEntry,
    ClockSource,
    FixedClock,
    InvalidActorError,
    Ordering,
    PruneBounds,
    StepClock,
    SystemClock,
    VClock,
    all_nodes,
    canonical_text,
    compare,
    descends,
    equal,
    fresh,
    get_counter,
    get_timestamp,
    increment,
    is_valid_actor,
    merge,
    prune,
)

__version__ = "0.1.0"

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
    "backend_name",
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
    "__version__",
]
