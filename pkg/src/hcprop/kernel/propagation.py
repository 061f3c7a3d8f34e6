"""Propagator contract and the fixpoint engine."""

from __future__ import annotations

import copy
import enum
from collections import deque
from typing import Sequence

from .store import Store


class PropStatus(enum.Enum):
    FAILED = "failed"
    FIX = "fix"          # idempotent on its own changes
    NOFIX = "nofix"      # run me again
    SUBSUMED = "subsumed"


class ContractViolation(AssertionError):
    """A propagator step was not contracting or not local."""


class Propagator:
    """Base class for propagators.

    A propagator modifies a store in place, and only by removing values.  It
    declares which variables it may modify (``scope`` / ``scope_iv``, bitmasks
    over set and interval variables) and which modifications wake it up
    (``watch`` / ``watch_iv``).  ``half_checking`` marks propagators that may
    remove solutions; their only obligation is that a fully assigned store they
    leave alone satisfies the constraint.  ``low_priority`` propagators only run
    once every normal propagator is at fixpoint.
    """

    name = "propagator"
    half_checking = False
    low_priority = False

    def __init__(self, scope: int = 0, scope_iv: int = 0,
                 watch: int | None = None, watch_iv: int | None = None) -> None:
        self.scope = scope
        self.scope_iv = scope_iv
        self.watch = scope if watch is None else watch
        self.watch_iv = scope_iv if watch_iv is None else watch_iv

    def propagate(self, store: Store) -> PropStatus:
        raise NotImplementedError

    def fork(self, seed: int | None = None) -> Propagator:
        """A copy for another asset: shares immutable tables, fresh private state."""
        return copy.copy(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class FailPropagator(Propagator):
    """Maps every store to the failed store.

    Trivially half-checking for every constraint: it has no fixpoints at all.
    """

    name = "fail"
    half_checking = True

    def propagate(self, store: Store) -> PropStatus:
        store.fail()
        return PropStatus.FAILED


def check_step(before: Store, after: Store, prop: Propagator) -> None:
    """Raise ContractViolation unless ``after`` is a contracting, local
    image of ``before`` under ``prop``."""
    if after.failed:
        return
    if not after.subset_of(before):
        raise ContractViolation(f"{prop!r} is not contracting")
    for v, (a, b) in enumerate(zip(before.masks, after.masks)):
        if a != b and not (prop.scope >> v) & 1:
            raise ContractViolation(f"{prop!r} modified set variable {v} outside its scope")
    for v in range(before.num_intervals):
        if (before.lo[v], before.hi[v]) != (after.lo[v], after.hi[v]) \
                and not (prop.scope_iv >> v) & 1:
            raise ContractViolation(f"{prop!r} modified interval variable {v} outside its scope")


def propagate_fixpoint(store: Store, props: Sequence[Propagator], *,
                       check: bool = False) -> bool:
    """Run ``props`` on ``store`` (in place) until no propagator is scheduled.

    Returns True for a stable store, False if it failed.  Scheduling is FIFO
    with two levels: low-priority propagators run only when the normal queue is
    empty.  A propagator is rescheduled when a variable it watches changes,
    except for changes it made itself while reporting FIX.  NOFIX without any
    change counts as FIX.  With ``check`` set
    every step is verified to be contracting and local.
    """
    if store.failed:
        return False
    normal: deque[int] = deque()
    low: deque[int] = deque()
    watch = [(q.watch, q.watch_iv, q.low_priority) for q in props]
    entailed = store.entailed
    queued = 0
    for i, (_, _, is_low) in enumerate(watch):
        if not (entailed >> i) & 1:
            (low if is_low else normal).append(i)
            queued |= 1 << i

    while normal or low:
        i = normal.popleft() if normal else low.popleft()
        queued &= ~(1 << i)
        p = props[i]
        store.touched = 0
        store.touched_iv = 0
        before = store.copy() if check else None
        status = p.propagate(store)
        if before is not None:
            check_step(before, store, p)
        if status is PropStatus.FAILED or store.failed:
            store.failed = True
            return False
        if status is PropStatus.SUBSUMED:
            store.entailed |= 1 << i
        t, tiv = store.touched, store.touched_iv
        if (t or tiv) and status is PropStatus.NOFIX and not (queued >> i) & 1:
            (low if p.low_priority else normal).append(i)
            queued |= 1 << i
        if t or tiv:
            skip = queued | store.entailed | (1 << i)
            for j, (w, wiv, is_low) in enumerate(watch):
                if (w & t or wiv & tiv) and not (skip >> j) & 1:
                    (low if is_low else normal).append(j)
                    queued |= 1 << j
    return True
