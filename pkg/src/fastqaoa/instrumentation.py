"""Lightweight event counters used to verify caching and communication contracts.

The library bumps a counter whenever a full cost-vector precompute runs and
whenever a sharded all-to-all exchange fires.  Tests read these to assert
that precomputation is amortized (done once per problem) and that the
distributed mixer performs exactly the expected number of exchanges.
"""

from __future__ import annotations

counters: dict[str, int] = {
    "precompute": 0,
    "exchange": 0,
}


def bump(name: str) -> None:
    counters[name] = counters.get(name, 0) + 1


def get(name: str) -> int:
    return counters.get(name, 0)


def reset() -> None:
    for key in counters:
        counters[key] = 0
