"""Finite-domain store.

Two kinds of variables live in a store:

* *set variables*, whose domain is an arbitrary finite set of non-negative
  integers, held as an int bitmask (bit ``v`` set iff ``v`` is in the domain);
* *interval variables*, whose domain is ``[lo, hi]`` (used for costs, which
  range over large sums).

All mutation goes through methods that only ever remove values, so a store can
only shrink.  When any domain becomes empty the store is marked failed; every
failed store compares equal to every other failed store.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable


@lru_cache(maxsize=1 << 16)
def bits(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def to_mask(values: Iterable[int]) -> int:
    mask = 0
    for v in values:
        if v < 0:
            raise ValueError(f"set-variable values must be non-negative, got {v}")
        mask |= 1 << v
    return mask


class Store:
    """Domains for ``len(masks)`` set variables and ``len(lo)`` interval variables.

    ``touched`` / ``touched_iv`` are bitmasks of variables modified since the
    engine last cleared them; they drive propagator wake-up.  ``entailed`` is a
    bitmask of propagator slots reported subsumed on this store (it is copied
    along with the domains, so subsumption is per search node).
    """

    __slots__ = ("masks", "lo", "hi", "failed", "touched", "touched_iv", "entailed")

    def __init__(self, masks: list[int], lo: list[int] | None = None,
                 hi: list[int] | None = None) -> None:
        self.masks = masks
        self.lo = lo if lo is not None else []
        self.hi = hi if hi is not None else []
        self.failed = any(m == 0 for m in masks) or any(
            a > b for a, b in zip(self.lo, self.hi))
        self.touched = 0
        self.touched_iv = 0
        self.entailed = 0

    @classmethod
    def from_domains(cls, sets: Iterable[Iterable[int]] = (),
                     intervals: Iterable[tuple[int, int]] = ()) -> Store:
        intervals = list(intervals)
        return cls([to_mask(s) for s in sets],
                   [a for a, _ in intervals], [b for _, b in intervals])

    def copy(self) -> Store:
        new = Store.__new__(Store)
        new.masks = self.masks[:]
        new.lo = self.lo[:]
        new.hi = self.hi[:]
        new.failed = self.failed
        new.touched = 0
        new.touched_iv = 0
        new.entailed = self.entailed
        return new

    @property
    def num_sets(self) -> int:
        return len(self.masks)

    @property
    def num_intervals(self) -> int:
        return len(self.lo)

    # -- queries ---------------------------------------------------------

    def values(self, var: int) -> list[int]:
        return list(bits(self.masks[var]))

    def size(self, var: int) -> int:
        return self.masks[var].bit_count()

    def contains(self, var: int, value: int) -> bool:
        return value >= 0 and (self.masks[var] >> value) & 1 == 1

    def is_assigned(self, var: int) -> bool:
        m = self.masks[var]
        return m != 0 and m & (m - 1) == 0

    def value(self, var: int) -> int:
        """Value of an assigned set variable."""
        m = self.masks[var]
        if m == 0 or m & (m - 1):
            raise ValueError(f"variable {var} is not assigned")
        return m.bit_length() - 1

    def min(self, var: int) -> int:
        m = self.masks[var]
        return (m & -m).bit_length() - 1

    def max(self, var: int) -> int:
        return self.masks[var].bit_length() - 1

    def all_assigned(self) -> bool:
        return all(m & (m - 1) == 0 for m in self.masks) and all(
            a == b for a, b in zip(self.lo, self.hi))

    # -- mutation (contracting only) ---------------------------------------

    def fail(self) -> None:
        self.failed = True

    def restrict(self, var: int, keep: int) -> bool:
        """Intersect the domain of ``var`` with the bitmask ``keep``.

        Returns True iff the domain changed.
        """
        old = self.masks[var]
        new = old & keep
        if new == old:
            return False
        self.masks[var] = new
        self.touched |= 1 << var
        if new == 0:
            self.failed = True
        return True

    def remove_value(self, var: int, value: int) -> bool:
        if value < 0:
            return False
        return self.restrict(var, ~(1 << value))

    def assign(self, var: int, value: int) -> bool:
        if value < 0:
            self.masks[var] = 0
            self.failed = True
            return True
        return self.restrict(var, 1 << value)

    def set_min(self, iv: int, value: int) -> bool:
        if value <= self.lo[iv]:
            return False
        self.lo[iv] = value
        self.touched_iv |= 1 << iv
        if value > self.hi[iv]:
            self.failed = True
        return True

    def set_max(self, iv: int, value: int) -> bool:
        if value >= self.hi[iv]:
            return False
        self.hi[iv] = value
        self.touched_iv |= 1 << iv
        if value < self.lo[iv]:
            self.failed = True
        return True

    # -- comparisons -------------------------------------------------------

    def subset_of(self, other: Store) -> bool:
        """Pointwise inclusion; a failed store is included in everything."""
        if self.failed:
            return True
        if other.failed:
            return False
        return (all(a & ~b == 0 for a, b in zip(self.masks, other.masks))
                and all(a >= b for a, b in zip(self.lo, other.lo))
                and all(a <= b for a, b in zip(self.hi, other.hi)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Store):
            return NotImplemented
        if self.failed or other.failed:
            return self.failed and other.failed
        return (self.masks == other.masks and self.lo == other.lo
                and self.hi == other.hi)

    def __hash__(self) -> int:
        if self.failed:
            return hash("failed-store")
        return hash((tuple(self.masks), tuple(self.lo), tuple(self.hi)))

    def __repr__(self) -> str:
        if self.failed:
            return "Store(<failed>)"
        sets = ", ".join("{" + ",".join(map(str, bits(m))) + "}" for m in self.masks)
        ivs = ", ".join(f"[{a},{b}]" for a, b in zip(self.lo, self.hi))
        return f"Store(sets=[{sets}], intervals=[{ivs}])"


def remove_value(store: Store, var: int, value: int) -> Store:
    """Functional form of :meth:`Store.remove_value`; ``store`` is untouched."""
    out = store.copy()
    out.remove_value(var, value)
    return out


def assign(store: Store, var: int, value: int) -> Store:
    """Functional form of :meth:`Store.assign`; ``store`` is untouched."""
    out = store.copy()
    out.assign(var, value)
    return out
