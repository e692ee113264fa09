"""Logical Pauli group tracking and weight searches.

A :class:`LogicalPresentation` stores one representative per generator of
``N(S)/S`` as symplectic pairs. Phases of representatives carry no meaning
here; cosets are compared modulo the stabilizer group and modulo phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as cartesian
from typing import Iterator, List, Optional, Sequence, Tuple

from . import gf2
from .pauli import PauliOperator, multiply
from .tableau import ContractError, StabilizerTableau


def _anti(a: PauliOperator, b: PauliOperator) -> bool:
    return not a.commutes(b)


@dataclass(frozen=True)
class LogicalPresentation:
    pairs: Tuple[Tuple[PauliOperator, PauliOperator], ...]

    @property
    def k(self) -> int:
        return len(self.pairs)

    def representatives(self) -> List[PauliOperator]:
        return [r for pair in self.pairs for r in pair]

    def check_invariants(self, tab: StabilizerTableau) -> None:
        reps = self.representatives()
        for r in reps:
            for g in tab.paulis():
                if not r.commutes(g):
                    raise AssertionError(f"representative {r} anticommutes with stabilizer {g}")
        for i, (xi, zi) in enumerate(self.pairs):
            if xi.commutes(zi):
                raise AssertionError(f"pair {i} does not anticommute")
            for j, (xj, zj) in enumerate(self.pairs):
                if i == j:
                    continue
                for a in (xi, zi):
                    for b in (xj, zj):
                        if not a.commutes(b):
                            raise AssertionError(f"pairs {i} and {j} do not commute")
        vecs = [g.vec for g in tab.paulis()] + [r.vec for r in reps]
        if gf2.rank(vecs) != len(vecs):
            raise AssertionError("representatives are dependent modulo the stabilizer group")

    def format(self, labels=None) -> str:
        def show(p: PauliOperator) -> str:
            u = p.unsigned()
            return u.to_labels(labels) if labels else u.letters()
        return "<" + ", ".join(f"({show(x)}, {show(z)})" for x, z in self.pairs) + ">"


def lpg_init(n: int) -> LogicalPresentation:
    if n < 1:
        raise ValueError("need at least one qubit")
    return LogicalPresentation(tuple(
        (PauliOperator.single(n, j, "X"), PauliOperator.single(n, j, "Z")) for j in range(n)))


def lpg_measure(lp: LogicalPresentation, p: PauliOperator, case: int,
                s1: Optional[PauliOperator] = None) -> LogicalPresentation:
    """Update the presentation after measuring ``p``.

    Case 1 eliminates one symplectic pair: the pivot is the lowest-index pair
    with a member anticommuting with ``p``, and every other representative is
    projected to commute with both ``p`` and that member. Case 3 multiplies
    the representatives that anticommute with ``p`` by the removed stabilizer.
    """
    if case == 2:
        return lp
    if case == 3:
        if s1 is None or s1.commutes(p):
            raise ContractError("case 3 needs the removed stabilizer, which must anticommute with p")
        return LogicalPresentation(tuple(
            tuple(multiply(r, s1) if _anti(r, p) else r for r in pair) for pair in lp.pairs))
    if case != 1:
        raise ContractError(f"unknown measurement case {case}")
    pivot = None
    for j, (xj, zj) in enumerate(lp.pairs):
        if _anti(p, zj):
            pivot, partner = j, zj
            break
        if _anti(p, xj):
            pivot, partner = j, xj
            break
    if pivot is None:
        raise ContractError(f"{p} is a trivial logical; case 1 does not apply")

    def project(v: PauliOperator) -> PauliOperator:
        if _anti(v, partner):
            v = multiply(v, p)
        if _anti(v, p):
            v = multiply(v, partner)
        return v

    return LogicalPresentation(tuple(
        (project(x), project(z)) for j, (x, z) in enumerate(lp.pairs) if j != pivot))


def lpg_track_masks(lp: LogicalPresentation, masks: Sequence[Tuple[int, int]], p: PauliOperator,
                    case: int, p_bit: int, removed_mask: int = 0) -> List[Tuple[int, int]]:
    """Outcome masks riding along with the representatives through ``lpg_measure``.

    ``lp`` is the presentation before the measurement. Each representative
    picks up the outcome bits of whatever stabilizer or measured operator it
    gets multiplied by, mirroring the update in :func:`lpg_measure`.
    """
    if case == 2:
        return list(masks)
    if case == 3:
        return [tuple(m ^ removed_mask if _anti(r, p) else m for r, m in zip(pair, pm))
                for pair, pm in zip(lp.pairs, masks)]
    for j, (xj, zj) in enumerate(lp.pairs):
        if _anti(p, zj):
            pivot, partner, pmask = j, zj, masks[j][1]
            break
        if _anti(p, xj):
            pivot, partner, pmask = j, xj, masks[j][0]
            break
    else:
        raise ContractError(f"{p} is a trivial logical; case 1 does not apply")

    def project(v: PauliOperator, m: int) -> int:
        if _anti(v, partner):
            v = multiply(v, p)
            m ^= p_bit
        if _anti(v, p):
            m ^= pmask
        return m

    return [(project(x, mx), project(z, mz))
            for j, ((x, z), (mx, mz)) in enumerate(zip(lp.pairs, masks)) if j != pivot]


def _gray_products(gens: Sequence[PauliOperator]) -> Iterator[Tuple[int, int]]:
    """Yield ``(x, z)`` bits of every product of ``gens`` (phases dropped)."""
    x = z = 0
    yield x, z
    for i in range(1, 1 << len(gens)):
        g = gens[(i & -i).bit_length() - 1]
        x ^= g.x
        z ^= g.z
        yield x, z


def in_normalizer(tab: StabilizerTableau, p: PauliOperator) -> bool:
    return all(p.commutes(g) for g in tab.paulis())


def coset_min_weight(tab: StabilizerTableau, p: PauliOperator, w_max: int = 4,
                     exhaustive_rank: int = 20) -> Optional[int]:
    """Minimum weight over ``p * S``; None if it exceeds ``w_max`` in bounded mode."""
    if not in_normalizer(tab, p):
        raise ContractError(f"{p} is not in the normalizer of the stabilizer group")
    gens = tab.paulis()
    if len(gens) <= exhaustive_rank:
        best = p.n
        for gx, gz in _gray_products(gens):
            w = ((p.x ^ gx) | (p.z ^ gz)).bit_count()
            if w < best:
                best = w
        return best
    basis = gf2.Basis()
    for g in gens:
        basis.add(g.vec)
    for w in range(0, min(w_max, p.n) + 1):
        for q in paulis_of_weight(p.n, w):
            if basis.contains(q.vec ^ p.vec):
                return w
    return None


def paulis_of_weight(n: int, w: int) -> Iterator[PauliOperator]:
    for support in combinations(range(n), w):
        for letters in cartesian("XYZ", repeat=w):
            yield PauliOperator.from_letters(n, dict(zip(support, letters)))


_LETTER_BITS = ((1, 0), (1, 1), (0, 1))  # X, Y, Z as (x, z)


def min_weight_logical(tab: StabilizerTableau, w_max: int = 4) -> Tuple[Optional[int], Optional[PauliOperator]]:
    """Least weight of an operator commuting with ``tab`` but outside it.

    Works by depth-first search over supports in increasing weight; each
    qubit/letter contributes a precomputed syndrome column so only operators
    with zero syndrome reach the membership test. Returns ``(None, None)`` if
    nothing is found up to ``w_max``.
    """
    n = tab.n
    gens = tab.paulis()
    cols = []
    for q in range(n):
        row = []
        for xb, zb in _LETTER_BITS:
            syn = 0
            for i, g in enumerate(gens):
                if ((g.z >> q) & xb) ^ ((g.x >> q) & zb):
                    syn |= 1 << i
            row.append(syn)
        cols.append(row)
    basis = gf2.Basis()
    for g in gens:
        basis.add(g.vec)
    if len(basis) == 2 * n or not n:
        return None, None

    for w in range(1, min(w_max, n) + 1):
        found = _search(n, w, cols, basis)
        if found is not None:
            x, z = found
            return w, PauliOperator(n, (x & z).bit_count(), x, z)
    return None, None


def _search(n, w, cols, basis):
    stack = [(0, 0, 0, 0, 0)]  # next qubit, depth, syndrome, x, z
    while stack:
        start, depth, syn, x, z = stack.pop()
        if depth == w:
            if syn == 0 and not basis.contains(x | (z << n)):
                return x, z
            continue
        for q in range(start, n - (w - depth) + 1):
            bit = 1 << q
            for li, (xb, zb) in enumerate(_LETTER_BITS):
                stack.append((q + 1, depth + 1, syn ^ cols[q][li],
                              x | (bit if xb else 0), z | (bit if zb else 0)))
    return None


def coset_label(lp: LogicalPresentation, tab: StabilizerTableau, f: PauliOperator) -> str:
    """Classify ``f`` as trivial, a logical (with its pair coordinates), or syndrome."""
    if not in_normalizer(tab, f):
        return "syndrome"
    parts = []
    for j, (x, z) in enumerate(lp.pairs):
        has_x = _anti(f, z)
        has_z = _anti(f, x)
        if has_x and has_z:
            parts.append(f"Y{j}")
        elif has_x:
            parts.append(f"X{j}")
        elif has_z:
            parts.append(f"Z{j}")
    if not parts:
        return "trivial"
    return "logical:" + ",".join(parts)


def same_cosets(lp: LogicalPresentation, pairs: Sequence[Tuple[PauliOperator, PauliOperator]],
                tab: StabilizerTableau) -> bool:
    """Pairwise coset equality of ``lp`` against expected representatives."""
    if len(pairs) != lp.k:
        return False
    basis = gf2.Basis()
    for g in tab.paulis():
        basis.add(g.vec)
    for (x, z), (ex, ez) in zip(lp.pairs, pairs):
        if not basis.contains(x.vec ^ ex.vec) or not basis.contains(z.vec ^ ez.vec):
            return False
    return True


def code_distance(run, w_max: int = 4) -> Optional[int]:
    """Naive (spacelike) distance: least logical weight over one period after establishment.

    ``run`` is a :class:`~isgcodes.schedule.RunReport`. Returns None when no
    logical of weight at most ``w_max`` exists at any of those timesteps, or
    when the code encodes nothing.
    """
    if run.T is None:
        raise ContractError("schedule is not established within the run")
    span = run.period_rounds()
    best = None
    for t in range(run.T, run.T + span):
        if t >= len(run.tableaux):
            raise ContractError("run too short to cover a period after establishment")
        tab = run.tableaux[t]
        if tab.rank() == tab.n:
            continue
        limit = w_max if best is None else min(w_max, best - 1)
        if limit < 1:
            break
        w, _ = min_weight_logical(tab, limit)
        if w is not None:
            best = w
    return best
