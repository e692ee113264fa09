"""CSS ZX-diagrams of measurement schedules and their unsigned Pauli webs.

A web highlights each edge green, red, both or neither. Edge ``e`` owns two
GF(2) variables: bit ``2e`` (green) and bit ``2e + 1`` (red), so a web is a
single int and the valid webs form the kernel of a linear system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import gf2
from .pauli import PauliOperator
from .schedule import MeasurementSchedule, RunReport
from .tableau import ContractError, OutcomeId


class UnsupportedDiagram(ValueError):
    """The schedule measures an operator mixing X and Z, which has no CSS diagram here."""


GREEN, RED, HADAMARD, INPUT, OUTPUT = "Z", "X", "H", "in", "out"


@dataclass(frozen=True)
class Node:
    kind: str
    phase: int = 0  # multiple of pi, only 0 or 1
    tag: Optional[OutcomeId] = None
    qubit: Optional[int] = None
    t: Optional[int] = None


@dataclass
class ZxDiagram:
    n: int
    nodes: List[Node] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)
    inputs: List[int] = field(default_factory=list)
    outputs: List[int] = field(default_factory=list)
    wire_edges: Dict[Tuple[int, int], int] = field(default_factory=dict)
    t_min: int = 0
    t_max: int = -1

    def add_node(self, node: Node) -> int:
        if node.kind in (GREEN, RED) and node.phase not in (0, 1):
            raise ValueError("only phases 0 and pi are supported")
        self.nodes.append(node)
        return len(self.nodes) - 1

    def add_edge(self, u: int, v: int) -> int:
        self.edges.append((u, v))
        return len(self.edges) - 1

    def incident(self) -> List[List[int]]:
        inc: List[List[int]] = [[] for _ in self.nodes]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return inc

    def check(self) -> None:
        inc = self.incident()
        for i, node in enumerate(self.nodes):
            if node.kind in (INPUT, OUTPUT) and len(inc[i]) != 1:
                raise AssertionError(f"boundary node {i} has degree {len(inc[i])}")
            if node.kind == HADAMARD and len(inc[i]) != 2:
                raise AssertionError(f"hadamard box {i} has degree {len(inc[i])}")

    @property
    def n_vars(self) -> int:
        return 2 * len(self.edges)

    def boundary_mask(self, which: Sequence[int]) -> int:
        inc = self.incident()
        m = 0
        for node in which:
            for e in inc[node]:
                m |= 3 << (2 * e)
        return m

    def constraint_rows(self) -> List[int]:
        rows = []
        inc = self.incident()
        for i, node in enumerate(self.nodes):
            es = inc[i]
            if node.kind in (GREEN, RED):
                same, other = (0, 1) if node.kind == GREEN else (1, 0)
                row = 0
                for e in es:
                    row ^= 1 << (2 * e + same)
                if row:
                    rows.append(row)
                for a, b in zip(es, es[1:]):
                    rows.append((1 << (2 * a + other)) ^ (1 << (2 * b + other)))
            elif node.kind == HADAMARD:
                a, b = es
                rows.append((1 << (2 * a)) ^ (1 << (2 * b + 1)))
                rows.append((1 << (2 * a + 1)) ^ (1 << (2 * b)))
        return rows


@dataclass(frozen=True)
class PauliWeb:
    bits: int  # interleaved green/red variables

    @property
    def green(self) -> int:
        return _deinterleave(self.bits)

    @property
    def red(self) -> int:
        return _deinterleave(self.bits >> 1)

    def edge_colour(self, e: int) -> int:
        """0 none, 1 green, 2 red, 3 both."""
        return (self.bits >> (2 * e)) & 3

    def is_css(self) -> bool:
        return not (self.green & self.red)

    def is_empty(self) -> bool:
        return not self.bits


def _deinterleave(v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out |= 1 << i
        v >>= 2
        i += 1
    return out


def web_from_edges(green: Sequence[int] = (), red: Sequence[int] = ()) -> PauliWeb:
    bits = 0
    for e in green:
        bits ^= 1 << (2 * e)
    for e in red:
        bits ^= 1 << (2 * e + 1)
    return PauliWeb(bits)


# compilation --------------------------------------------------------------

def compile_schedule(sched: MeasurementSchedule, t_max: int, t_min: int = 0) -> ZxDiagram:
    """Diagram of rounds ``t_min..t_max`` with post-selected (phase-0) spiders.

    A Z-type measurement of weight two or more splices a green spider into
    each touched wire and joins them to one red collector spider carrying the
    outcome tag; X-type swaps colours. A weight-one Z measurement ends the
    wire at a tagged red one-legged spider and restarts it at another red
    spider with the same tag (colours swapped for X).
    """
    n = sched.n
    d = ZxDiagram(n, t_min=t_min, t_max=t_max)
    cur = []
    last = []
    for q in range(n):
        node = d.add_node(Node(INPUT, qubit=q, t=t_min - 1))
        d.inputs.append(node)
        cur.append(node)
        last.append(t_min - 1)

    def extend(q: int, node: int, t: int) -> None:
        e = d.add_edge(cur[q], node)
        for s in range(last[q], t):
            d.wire_edges.setdefault((q, s), e)
        last[q] = t
        cur[q] = node

    for t in range(t_min, t_max + 1):
        for j, p in enumerate(sched.round(t)):
            if p.x and p.z:
                raise UnsupportedDiagram(f"round {t} item {j}: {sched.show(p)} is not X-type or Z-type")
            zt = bool(p.z)
            spliced, collector = (GREEN, RED) if zt else (RED, GREEN)
            tag = OutcomeId(sched.show(p), t, j)
            qs = list(gf2.bits(p.support))
            if len(qs) == 1:
                q = qs[0]
                end = d.add_node(Node(collector, tag=tag, qubit=q, t=t))
                extend(q, end, t)
                start = d.add_node(Node(collector, tag=tag, qubit=q, t=t))
                cur[q] = start
                continue
            col = d.add_node(Node(collector, tag=tag, t=t))
            for q in qs:
                s = d.add_node(Node(spliced, qubit=q, t=t))
                extend(q, s, t)
                d.add_edge(s, col)
    for q in range(n):
        node = d.add_node(Node(OUTPUT, qubit=q, t=t_max + 1))
        d.outputs.append(node)
        extend(q, node, t_max + 1)
    return d


# web space ------------------------------------------------------------------

def enumerate_webs(d: ZxDiagram, allow_inputs: bool = True, allow_outputs: bool = True) -> List[PauliWeb]:
    """Basis of the web space, optionally forcing input/output edges to be unhighlighted."""
    rows = d.constraint_rows()
    for side, allowed in ((d.inputs, allow_inputs), (d.outputs, allow_outputs)):
        if not allowed:
            m = d.boundary_mask(side)
            rows.extend(1 << b for b in gf2.bits(m))
    return [PauliWeb(v) for v in gf2.right_kernel(rows, d.n_vars)]


def validate_web(d: ZxDiagram, w: PauliWeb) -> bool:
    if w.bits >> d.n_vars:
        raise ContractError("web highlights edges that are not in the diagram")
    return all(not gf2.parity(row & w.bits) for row in d.constraint_rows())


def multiply_webs(a: PauliWeb, b: PauliWeb) -> PauliWeb:
    return PauliWeb(a.bits ^ b.bits)


def _touches(d: ZxDiagram, w: PauliWeb, side: Sequence[int]) -> bool:
    return bool(w.bits & d.boundary_mask(side))


def classify_web(d: ZxDiagram, w: PauliWeb) -> str:
    if w.bits >> d.n_vars:
        raise ContractError("web highlights edges that are not in the diagram")
    if w.is_empty():
        return "other"
    ins, outs = _touches(d, w, d.inputs), _touches(d, w, d.outputs)
    if not ins and not outs:
        return "detecting"
    if outs and not ins:
        return "stabilizing"
    if ins and outs:
        return "operating"
    return "other"


def _boundary_operator(d: ZxDiagram, w: PauliWeb, side: Sequence[int]) -> PauliOperator:
    inc = d.incident()
    x = z = 0
    for q, node in enumerate(side):
        c = w.edge_colour(inc[node][0])
        if c & 1:
            z |= 1 << q
        if c & 2:
            x |= 1 << q
    return PauliOperator(d.n, (x & z).bit_count(), x, z)


def web_output_operator(d: ZxDiagram, w: PauliWeb) -> PauliOperator:
    """Unsigned operator on the outputs: green is Z, red is X, both is Y."""
    return _boundary_operator(d, w, d.outputs)


def web_input_operator(d: ZxDiagram, w: PauliWeb) -> PauliOperator:
    return _boundary_operator(d, w, d.inputs)


def web_detector(d: ZxDiagram, w: PauliWeb) -> frozenset:
    """Outcome tags of spiders met by a highlight of the opposite colour, by parity."""
    inc = d.incident()
    tags: Dict[OutcomeId, int] = {}
    for i, node in enumerate(d.nodes):
        if node.tag is None:
            continue
        want = 1 if node.kind == RED else 2  # red spider crossed by green, or green by red
        if any(w.edge_colour(e) & want for e in inc[i]):
            tags[node.tag] = tags.get(node.tag, 0) ^ 1
    return frozenset(t for t, v in tags.items() if v)


def touched_tags(d: ZxDiagram, w: PauliWeb) -> Dict[OutcomeId, int]:
    """How many tagged spiders of each outcome the web crosses (before parity)."""
    inc = d.incident()
    out: Dict[OutcomeId, int] = {}
    for i, node in enumerate(d.nodes):
        if node.tag is None:
            continue
        want = 1 if node.kind == RED else 2
        if any(w.edge_colour(e) & want for e in inc[i]):
            out[node.tag] = out.get(node.tag, 0) + 1
    return out


def edge_pauli(w: PauliWeb, e: int) -> str:
    return "IZXY"[w.edge_colour(e)]


def web_flipped_by(d: ZxDiagram, w: PauliWeb, qubit: int, t: int, pauli: str) -> bool:
    """Whether a single-qubit error after round ``t`` anticommutes with the web there."""
    e = d.wire_edges[(qubit, t)]
    here = edge_pauli(w, e)
    if here == "I" or pauli == "I":
        return False
    return here != pauli


# cross-validation with the tableau engine -----------------------------------

@dataclass
class CrossCheck:
    t: int
    stabilizers_match: bool
    detectors_match: bool
    logicals_match: bool
    n_webs: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.stabilizers_match and self.detectors_match and self.logicals_match


def cross_check(report: RunReport, t: int) -> CrossCheck:
    sched = report.schedule
    d = compile_schedule(sched, t)
    all_webs = enumerate_webs(d)
    no_input = enumerate_webs(d, allow_inputs=False)
    closed = enumerate_webs(d, allow_inputs=False, allow_outputs=False)
    tab = report.tableaux[t]
    lp = report.presentations[t]

    stab_vecs = [web_output_operator(d, w).vec for w in no_input]
    isg_vecs = [p.vec for p in tab.paulis()]
    stab_ok = gf2.same_span(stab_vecs, isg_vecs)

    reg = report.registry
    web_dets = [reg.mask_of(web_detector(d, w)) for w in closed]
    tab_dets = [x.mask for x in report.detectors_until(t)]
    det_ok = gf2.same_span(web_dets, tab_dets)

    all_vecs = [web_output_operator(d, w).vec for w in all_webs]
    cent_vecs = isg_vecs + [r.vec for r in lp.representatives()]
    log_ok = gf2.same_span(all_vecs, cent_vecs) and gf2.rank(all_vecs) - gf2.rank(stab_vecs) == 2 * lp.k
    detail = (f"webs={len(all_webs)} stabilizing-rank={gf2.rank(stab_vecs)} isg-rank={len(isg_vecs)} "
              f"detector-rank web/tableau={gf2.rank(web_dets)}/{gf2.rank(tab_dets)} "
              f"output-rank={gf2.rank(all_vecs)} centralizer-rank={gf2.rank(cent_vecs)}")
    return CrossCheck(t, stab_ok, det_ok, log_ok, len(all_webs), detail)


def coverage(d: ZxDiagram) -> dict:
    """Fraction of edges highlighted by at least one detecting-region basis web."""
    closed = enumerate_webs(d, allow_inputs=False, allow_outputs=False)
    covered = 0
    for w in closed:
        covered |= w.green | w.red
    return {"edges": len(d.edges), "covered": covered.bit_count(), "detecting_basis": len(closed)}


# export ---------------------------------------------------------------------

def _tag_text(tag: Optional[OutcomeId]) -> str:
    return "" if tag is None else f" tag={tag}"


def to_text(d: ZxDiagram) -> str:
    lines = [f"zx n={d.n} nodes={len(d.nodes)} edges={len(d.edges)}"]
    for i, node in enumerate(d.nodes):
        extra = "" if node.kind in (INPUT, OUTPUT, HADAMARD) else f" phase={node.phase}"
        q = "" if node.qubit is None else f" qubit={node.qubit}"
        lines.append(f"node {i} {node.kind}{extra}{q} t={node.t}{_tag_text(node.tag)}")
    for e, (u, v) in enumerate(d.edges):
        lines.append(f"edge {e} {u} {v}")
    lines.append("inputs " + " ".join(map(str, d.inputs)))
    lines.append("outputs " + " ".join(map(str, d.outputs)))
    return "\n".join(lines) + "\n"


def to_dot(d: ZxDiagram, web: Optional[PauliWeb] = None) -> str:
    fill = {GREEN: "#88dd88", RED: "#ee8888", HADAMARD: "#ffee88", INPUT: "white", OUTPUT: "white"}
    lines = ["graph zx {", "  node [style=filled, fontsize=8];"]
    for i, node in enumerate(d.nodes):
        shape = "box" if node.kind in (HADAMARD, INPUT, OUTPUT) else "circle"
        label = "" if node.tag is None else f"{node.tag.pauli}@{node.tag.t}"
        if node.kind in (INPUT, OUTPUT):
            label = f"{node.kind}{node.qubit}"
        lines.append(f'  n{i} [shape={shape}, fillcolor="{fill[node.kind]}", label="{label}"];')
    colours = {1: "green", 2: "red", 3: "goldenrod"}
    for e, (u, v) in enumerate(d.edges):
        c = web.edge_colour(e) if web is not None else 0
        style = f' [color={colours[c]}, penwidth=3]' if c else ""
        lines.append(f"  n{u} -- n{v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
