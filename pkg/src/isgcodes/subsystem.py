"""Gauge groups, their centres, bare logicals, and the associated-ISG check.

Groups are handled modulo phase as GF(2) spans of symplectic vectors; the
phase generator ``i`` is implicit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import gf2
from .logical import _LETTER_BITS, _search
from .pauli import PauliOperator, from_vec, symplectic_product
from .schedule import EstablishmentError, MeasurementSchedule, RunReport, run


@dataclass(frozen=True)
class GaugeGroup:
    n: int
    generators: Tuple[PauliOperator, ...]

    def vecs(self) -> List[int]:
        return [g.vec for g in self.generators]

    def basis(self) -> gf2.Basis:
        b = gf2.Basis()
        for v in self.vecs():
            b.add(v)
        return b

    def contains(self, p: PauliOperator) -> bool:
        return self.basis().contains(p.vec)

    def is_abelian(self) -> bool:
        return all(a.commutes(b) for i, a in enumerate(self.generators) for b in self.generators[i + 1:])

    def same_as(self, other: "GaugeGroup") -> bool:
        return self.n == other.n and gf2.same_span(self.vecs(), other.vecs())


def gauge_of_schedule(sched: MeasurementSchedule) -> GaugeGroup:
    gens = []
    seen = set()
    for rnd in sched.rounds:
        for p in rnd:
            u = p.unsigned()
            if u.vec not in seen:
                seen.add(u.vec)
                gens.append(u)
    return GaugeGroup(sched.n, tuple(gens))


def _swap_halves(v: int, n: int) -> int:
    mask = (1 << n) - 1
    return (v >> n) | ((v & mask) << n)


def centralizer(vecs: Sequence[int], n: int) -> List[int]:
    """Basis of all symplectic vectors commuting with every vector in ``vecs``."""
    return gf2.right_kernel([_swap_halves(v, n) for v in vecs], 2 * n)


def center_mod_phase(g: GaugeGroup) -> List[PauliOperator]:
    """Elements of the group commuting with the whole group, as independent generators."""
    vecs = [v for v in g.basis().vectors()]
    gram = []
    for a in vecs:
        row = 0
        for j, b in enumerate(vecs):
            if symplectic_product(a, b, g.n):
                row |= 1 << j
        gram.append(row)
    out = []
    for c in gf2.right_kernel(gram, len(vecs)):
        v = 0
        for j in gf2.bits(c):
            v ^= vecs[j]
        out.append(from_vec(v, g.n))
    return out


def bare_logicals(g: GaugeGroup) -> List[Tuple[PauliOperator, PauliOperator]]:
    """Symplectic pairs generating ``C(G)`` modulo the centre.

    ``C(G)`` modulo ``G`` equals ``C(G)`` modulo ``Z(G)``, so elements of the
    returned span that are not in ``G`` are exactly the bare logicals.
    """
    n = g.n
    cg = centralizer(g.vecs(), n)
    centre = gf2.Basis()
    for p in center_mod_phase(g):
        centre.add(p.vec)
    free = []
    work = gf2.Basis()
    for v in centre.vectors():
        work.add(v)
    for v in cg:
        if work.add(v):
            free.append(v)
    return _symplectic_pairs(free, n)


def _symplectic_pairs(vecs: List[int], n: int) -> List[Tuple[PauliOperator, PauliOperator]]:
    """Symplectic Gram-Schmidt; the input must span a non-degenerate space."""
    pool = list(vecs)
    pairs = []
    while pool:
        a = pool.pop(0)
        idx = next((i for i, b in enumerate(pool) if symplectic_product(a, b, n)), None)
        if idx is None:
            raise ValueError("space is degenerate modulo the given subgroup")
        b = pool.pop(idx)
        fixed = []
        for v in pool:
            if symplectic_product(v, b, n):
                v ^= a
            if symplectic_product(v, a, n):
                v ^= b
            fixed.append(v)
        pool = fixed
        pairs.append((from_vec(a, n), from_vec(b, n)))
    return pairs


def subsystem_k(g: GaugeGroup) -> int:
    return len(bare_logicals(g))


def bare_distance(g: GaugeGroup, w_max: int = 4) -> Optional[int]:
    """Least weight of an operator in ``C(G)`` but outside ``G``."""
    n = g.n
    gens = list(g.generators)
    cols = []
    for q in range(n):
        row = []
        for xb, zb in _LETTER_BITS:
            syn = 0
            for i, h in enumerate(gens):
                if ((h.z >> q) & xb) ^ ((h.x >> q) & zb):
                    syn |= 1 << i
            row.append(syn)
        cols.append(row)
    basis = g.basis()
    for w in range(1, min(w_max, n) + 1):
        if _search(n, w, cols, basis) is not None:
            return w
    return None


@dataclass
class AssociationReport:
    associated: bool
    same_gauge_group: bool
    center_in_isg: bool
    T: Optional[int]
    reasons: List[str] = field(default_factory=list)
    k_isg: Optional[int] = None
    k_subsystem: Optional[int] = None

    @property
    def saturated(self) -> Optional[bool]:
        if self.k_isg is None or self.k_subsystem is None:
            return None
        return self.k_isg == self.k_subsystem


def is_associated_isg(sched: MeasurementSchedule, g: GaugeGroup,
                      report: Optional[RunReport] = None) -> AssociationReport:
    reasons = []
    same = gauge_of_schedule(sched).same_as(g)
    if not same:
        reasons.append("schedule does not generate the gauge group")
    if report is None:
        report = run(sched, sched.default_horizon() - 1)
    if report.T is None:
        return AssociationReport(False, same, False, None, reasons + ["schedule never establishes"])
    centre = center_mod_phase(g)
    ok = True
    for t in range(report.T, report.T + report.period_rounds()):
        b = gf2.Basis()
        for p in report.tableaux[t].paulis():
            b.add(p.vec)
        for c in centre:
            if not b.contains(c.vec):
                ok = False
                reasons.append(f"centre element {c.letters()} missing from the ISG at t={t}")
    k_isg = report.n - report.ranks[report.T]
    return AssociationReport(same and ok, same, ok, report.T, reasons, k_isg, subsystem_k(g))


def isg_within_gauge(report: RunReport, g: GaugeGroup) -> bool:
    """Every ISG generator at every timestep lies in the gauge group (mod phase)."""
    b = g.basis()
    return all(b.contains(p.vec) for tab in report.tableaux for p in tab.paulis())


def bare_logicals_embed(report: RunReport, g: GaugeGroup) -> bool:
    """Bare logical pairs stay non-trivial and inequivalent in the ISG code after establishment.

    Each bare pair must commute with every ISG at ``t >= T`` over one period,
    and the bare logicals must stay independent modulo that ISG, so distinct
    bare cosets give distinct ISG-code cosets.
    """
    if report.T is None:
        raise EstablishmentError("run is not established")
    bare = [v for pair in bare_logicals(g) for v in pair]
    for t in range(report.T, report.T + report.period_rounds()):
        tab = report.tableaux[t]
        if not all(b.commutes(s) for b in bare for s in tab.paulis()):
            return False
        vecs = [s.vec for s in tab.paulis()] + [b.vec for b in bare]
        if gf2.rank(vecs) != len(vecs):
            return False
    return True
