"""GF(2) linear algebra on Python ints used as bit vectors.

Bit ``j`` of an int is coordinate ``j``. All routines are pure; none of them
mutate their inputs.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple


def parity(v: int) -> int:
    return v.bit_count() & 1


def bits(v: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class Basis:
    """Incremental echelon basis that remembers how each row was formed.

    Every stored row carries a ``combo`` mask saying which inserted vectors
    XOR together to give it. Rows are keyed by their leading (highest) bit.
    """

    def __init__(self) -> None:
        self._rows: dict[int, Tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: int) -> Tuple[int, int]:
        """Return ``(residual, combo)`` after eliminating leading bits."""
        combo = 0
        rows = self._rows
        while vec:
            top = vec.bit_length() - 1
            row = rows.get(top)
            if row is None:
                break
            vec ^= row[0]
            combo ^= row[1]
        return vec, combo

    def add(self, vec: int, tag: int = 0) -> bool:
        """Insert ``vec`` labelled by ``tag``; return False if it was dependent."""
        res, combo = self.reduce(vec)
        if not res:
            return False
        self._rows[res.bit_length() - 1] = (res, combo ^ tag)
        return True

    def contains(self, vec: int) -> bool:
        return not self.reduce(vec)[0]

    def express(self, vec: int) -> Optional[int]:
        """Tag-combination producing ``vec``, or None if outside the span."""
        res, combo = self.reduce(vec)
        return None if res else combo

    def vectors(self) -> List[int]:
        return [row for row, _ in self._rows.values()]


def rank(rows: Iterable[int]) -> int:
    b = Basis()
    for r in rows:
        b.add(r)
    return len(b)


def span_contains(rows: Sequence[int], vec: int) -> bool:
    b = Basis()
    for r in rows:
        b.add(r)
    return b.contains(vec)


def same_span(a: Sequence[int], b: Sequence[int]) -> bool:
    ba, bb = Basis(), Basis()
    for r in a:
        ba.add(r)
    for r in b:
        bb.add(r)
    return len(ba) == len(bb) and all(bb.contains(r) for r in ba.vectors())


def solve(rows: Sequence[int], vec: int) -> Optional[int]:
    """Find a selection mask ``c`` with XOR of ``rows[i]`` over ``c`` equal to ``vec``."""
    b = Basis()
    for i, r in enumerate(rows):
        b.add(r, 1 << i)
    return b.express(vec)


def left_kernel(rows: Sequence[int]) -> List[int]:
    """Basis of selection masks whose rows XOR to zero."""
    b = Basis()
    out = []
    for i, r in enumerate(rows):
        res, combo = b.reduce(r)
        if res:
            b._rows[res.bit_length() - 1] = (res, combo ^ (1 << i))
        else:
            out.append(combo ^ (1 << i))
    return out


def rref(rows: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Fully reduced row echelon form; returns ``(rows, pivot_bits)``."""
    work: List[int] = []
    pivots: List[int] = []
    for r in rows:
        for w, p in zip(work, pivots):
            if (r >> p) & 1:
                r ^= w
        if not r:
            continue
        p = r.bit_length() - 1
        for i in range(len(work)):
            if (work[i] >> p) & 1:
                work[i] ^= r
        work.append(r)
        pivots.append(p)
    return work, pivots


def right_kernel(rows: Sequence[int], n_cols: int) -> List[int]:
    """Basis of vectors ``v`` (``n_cols`` bits) with ``parity(row & v) == 0`` for all rows."""
    work, pivots = rref(rows)
    pivot_set = set(pivots)
    out = []
    for f in range(n_cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for w, p in zip(work, pivots):
            if (w >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out
