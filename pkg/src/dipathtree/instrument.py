"""Elementary-step counting for complexity checks.

Algorithms report coarse units of work (adjacency scans, chain steps,
proposals) to the counter active in the current thread, if any::

    with count_steps() as ops:
        color_dipaths(tree, paths)
    print(ops.steps)
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from typing import Iterator


class OpCounter:
    __slots__ = ("steps",)

    def __init__(self) -> None:
        self.steps = 0

    def add(self, k: int = 1) -> None:
        self.steps += k


_local = threading.local()


def current() -> OpCounter | None:
    return getattr(_local, "counter", None)


@contextmanager
def count_steps() -> Iterator[OpCounter]:
    previous = current()
    counter = OpCounter()
    _local.counter = counter
    try:
        yield counter
    finally:
        _local.counter = previous
        if previous is not None:
            previous.steps += counter.steps
