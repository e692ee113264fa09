"""Named structural checks for the built-in codes."""

from __future__ import annotations

import collections
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from . import gf2, zoo
from .logical import min_weight_logical, same_cosets
from .pauli import PauliOperator
from .schedule import ErrorEvent, ExpectedGenerator, RunReport, inject, parameters, run, verify_isg_generators
from .subsystem import bare_distance, gauge_of_schedule, is_associated_isg
from .zxweb import PauliWeb, compile_schedule, enumerate_webs, touched_tags, web_detector


@dataclass
class Check:
    claim: str
    source: str
    expected: Any
    computed: Any
    passed: bool


@dataclass
class VerificationSuite:
    code: str
    checks: List[Check] = field(default_factory=list)

    def add(self, claim: str, source: str, expected: Any, computed: Any,
            passed: Optional[bool] = None) -> Check:
        ok = (expected == computed) if passed is None else passed
        c = Check(claim, source, expected, computed, bool(ok))
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _lit(s: str) -> PauliOperator:
    return PauliOperator.from_string(s)


# bacon-shor ---------------------------------------------------------------

def bacon_shor_expected_isg(t: int) -> List[ExpectedGenerator]:
    """Hand-derived ISG presentation of the two-round Bacon-Shor schedule."""
    if t == 0:
        return [ExpectedGenerator(_lit("XXII"), (("+XXII", 0),)),
                ExpectedGenerator(_lit("IIXX"), (("+IIXX", 0),))]
    if t % 2:
        return [ExpectedGenerator(_lit("ZIZI"), (("+ZIZI", t),)),
                ExpectedGenerator(_lit("IZIZ"), (("+IZIZ", t),)),
                ExpectedGenerator(_lit("XXXX"), (("+XXII", 0), ("+IIXX", 0)))]
    return [ExpectedGenerator(_lit("XXII"), (("+XXII", t),)),
            ExpectedGenerator(_lit("IIXX"), (("+IIXX", t),)),
            ExpectedGenerator(_lit("ZZZZ"), (("+ZIZI", 1), ("+IZIZ", 1)))]


def bacon_shor_expected_detectors(report: RunReport) -> List[int]:
    out = []
    for t in range(2, report.t_max + 1):
        a, b = ("+XXII", "+IIXX") if t % 2 == 0 else ("+ZIZI", "+IZIZ")
        m = 0
        for tt in (t, t - 2):
            m ^= report.outcome_mask(a, tt) ^ report.outcome_mask(b, tt)
        out.append(m)
    return out


def verify_bacon_shor(suite: VerificationSuite, rounds: int = 6) -> None:
    sched = zoo.make_bacon_shor()
    rep = run(sched, rounds - 1, check=True)
    isg_ok = all(verify_isg_generators(rep, t, bacon_shor_expected_isg(t)) for t in range(rounds))
    suite.add("ISG trace matches the hand-derived table", "two-round Bacon-Shor worked example", True, isg_ok)
    dets = bacon_shor_expected_detectors(rep)
    det_ok = gf2.same_span(dets, [d.mask for d in rep.detectors]) and all(d.sign == 1 for d in rep.detectors)
    suite.add("detector group equals the 4-outcome family at every t >= 2", "Bacon-Shor detectors", True, det_ok)
    lp0 = rep.presentations[0]
    exact0 = [(x.letters(), z.letters()) for x, z in lp0.pairs] == [("IXII", "ZZII"), ("IIIX", "IIZZ")]
    suite.add("logical presentation at t=0 is (X2, Z1Z2), (X4, Z3Z4)", "Bacon-Shor logical group", True, exact0)
    later = all(same_cosets(rep.presentations[t], [(_lit("XIXI"), _lit("ZZII"))], rep.tableaux[t])
                for t in range(1, rounds))
    suite.add("logical cosets for t >= 1 are X1X3 and Z1Z2", "Bacon-Shor logical group", True, later)
    suite.add("establishment time", "Bacon-Shor", 1, rep.T)
    params = parameters(sched)
    suite.add("parameters", "Bacon-Shor ISG code", "[[4,1,2]]", str(params))
    g = gauge_of_schedule(sched)
    suite.add("two-round schedule is an associated ISG code", "subsystem check", True,
              is_associated_isg(sched, g).associated)
    suite.add("singleton four-round schedule is not associated", "subsystem counterexample", False,
              is_associated_isg(zoo.make_bacon_shor_singletons(), g).associated)
    bd = bare_distance(g)
    suite.add("ISG distance at most bare distance", "subsystem bound", True,
              params.d is not None and bd is not None and params.d <= bd)


# double hexagon ------------------------------------------------------------

def single_error_scan(report: RunReport, error_rounds: int, start: int = 0):
    """Inject every single-qubit error after rounds ``start..start+error_rounds-1``.

    Returns ``(events, undetected_nontrivial, collisions)`` where collisions
    counts pairs of distinct detected events with identical syndromes.
    """
    seen: Dict[frozenset, int] = collections.Counter()
    bad = []
    events = 0
    for t in range(start, start + error_rounds):
        for q in range(report.n):
            for p in "XYZ":
                res = inject(report, [ErrorEvent(q, p, t)])
                events += 1
                if not res.violated and res.logical_effect != "trivial":
                    bad.append((q, p, t, res.logical_effect))
                if res.violated:
                    seen[res.violated] += 1
    collisions = sum(c * (c - 1) // 2 for c in seen.values())
    return events, bad, collisions


def verify_double_hexagon(suite: VerificationSuite) -> None:
    sched = zoo.make_double_hexagon()
    rep = run(sched, 4 * 6 - 1)
    params = parameters(sched, report=rep)
    suite.add("parameters", "double hexagon", "[[12,2,2]]", str(params))
    suite.add("period", "double hexagon", 6, sched.period)
    suite.add("establishment time", "double hexagon", 3, rep.T)
    suite.add("rank after establishment", "double hexagon", 10, rep.ranks[rep.T])
    isg_ok = all(verify_isg_generators(rep, t, zoo.double_hexagon_isg(t)) for t in range(3, 9))
    suite.add("ISG is the round plus three weight-six operators", "double hexagon ISG", True, isg_ok)
    w1 = [min_weight_logical(rep.tableaux[t], 1)[0] for t in range(3, 9)]
    suite.add("no weight-one logical at established t", "double hexagon distance", [None] * 6, w1)
    # errors before establishment can act on logicals that are still unprotected
    long_run = run(sched, rep.T + 12 + sched.period - 1)
    events, bad, collisions = single_error_scan(long_run, 12, start=rep.T)
    suite.add("single errors from T on are detected or trivial", "double hexagon fault check", 0, len(bad))
    _, early, _ = single_error_scan(long_run, rep.T)
    suite.add("undetected logical errors before T (informational)", "double hexagon fault check",
              len(early), len(early))
    suite.add("single-error events scanned", "3 Paulis x 12 qubits x 12 rounds", 432, events)
    suite.add("syndrome collisions (informational)", "double hexagon fault check", collisions, collisions)


# small codes -----------------------------------------------------------------

def verify_repetition(suite: VerificationSuite) -> None:
    sched = zoo.make_repetition()
    params = parameters(sched)
    suite.add("parameters", "repetition code", "[[2,1,1]]", str(params))
    suite.add("period", "repetition code", 1, sched.period)
    rep = run(sched, 1)
    isg = all(verify_isg_generators(rep, t, [ExpectedGenerator(_lit("ZZ"), (("+ZZ", 0),))]) for t in range(2))
    suite.add("ISG is m Z1Z2 for t >= 0", "repetition code", True, isg)
    res = inject(rep, [ErrorEvent(0, "X", 0)])
    suite.add("X between rounds violates the two-outcome detector", "repetition code", 1, len(res.violated))


def verify_422(suite: VerificationSuite) -> None:
    sched = zoo.make_422()
    suite.add("parameters", "[[4,2,2]] code", "[[4,2,2]]", str(parameters(sched)))
    suite.add("period", "[[4,2,2]] code", 2, sched.period)


def verify_colour_code(suite: VerificationSuite) -> None:
    sched = zoo.make_colour_code_torus(3, 3)
    rep = run(sched, 7)
    suite.add("qubits", "toric colour code (3,3)", 18, sched.n)
    suite.add("k after establishment", "toric colour code (3,3)", 4, sched.n - rep.ranks[rep.T])
    suite.add("all generators weight six", "toric colour code", True,
              all(p.weight() == 6 for rnd in sched.rounds for p in rnd))


def floquet_bulk_detector(sched, report: RunReport, t0: int, width: int = 8):
    """Minimum-weight detectors confined to rounds ``t0..t0+width-1`` with their web footprint.

    For each, returns the formal-product composition and the composition of
    the measurements its detecting region touches (a single-qubit
    measurement touched on both halves cancels from the product but is
    still part of the region).
    """
    inside = 0
    outside = 0
    for m in report.measurements:
        bit = report.registry.bit(m.oid)
        if t0 <= m.t < t0 + width:
            inside |= bit
        else:
            outside |= bit
    dets = [d.mask for d in report.detectors]
    ker = gf2.left_kernel([d & outside for d in dets])
    local = gf2.Basis()
    for c in ker:
        v = 0
        for i in gf2.bits(c):
            v ^= dets[i]
        local.add(v)
    vecs = local.vectors()
    if len(vecs) > 20:
        raise ValueError("too many local detectors to enumerate")
    elems = set()
    for c in range(1, 1 << len(vecs)):
        v = 0
        for i in gf2.bits(c):
            v ^= vecs[i]
        elems.add(v)
    if not elems:
        return []
    best = min(v.bit_count() for v in elems)
    diagram = compile_schedule(sched, t0 + width - 1, t_min=t0)
    closed = enumerate_webs(diagram, allow_inputs=False, allow_outputs=False)
    web_masks = [report.registry.mask_of(web_detector(diagram, w)) for w in closed]
    out = []
    for v in sorted(e for e in elems if e.bit_count() == best):
        oids = report.registry.ids_of(v)
        arity = collections.Counter(len(o.pauli.split()) for o in oids)
        times = sorted({o.t for o in oids})
        sel = gf2.solve(web_masks, v)
        touched = {}
        if sel is not None:
            bits = 0
            for i in gf2.bits(sel):
                bits ^= closed[i].bits
            touched = touched_tags(diagram, PauliWeb(bits))
        region = collections.Counter(len(o.pauli.split()) for o in touched)
        out.append({
            "product_pairs": arity[2], "product_singles": arity[1],
            "region_pairs": region[2], "region_singles": region[1],
            "timesteps": times[-1] - times[0] + 1,
            "local_webs": len(closed), "local_detectors": len(vecs),
        })
    return out


def verify_floquet_colour_code(suite: VerificationSuite, tile=None) -> None:
    tile = tile or zoo.load_floquet_tile()
    suite.add("period", "Floquetified colour code", 13, tile.period)
    for cols, rows, want in ((3, 1, 4), (3, 2, 4), (1, 1, 0), (2, 1, 0), (4, 1, 0), (1, 2, 0), (1, 3, 0)):
        sched = zoo.make_floquetified_colour_code_torus(tile, cols, rows)
        rep = run(sched, 4 * 13 - 1)
        k = None if rep.T is None else sched.n - rep.ranks[rep.T]
        suite.add(f"k on {cols}x{rows} tiles", "columns multiple of three encode four qubits", want, k)
        if (cols, rows) == (3, 1):
            suite.add("measurement weights at most two", "Floquetified colour code", True,
                      all(p.weight() <= 2 for rnd in sched.rounds for p in rnd))
            nb = all(_neighbour_only(sched, p) for rnd in sched.rounds for p in rnd)
            suite.add("pairs act on lattice neighbours only", "square-lattice connectivity", True, nb)
            shapes = floquet_bulk_detector(sched, rep, 26)
            region = {(s["region_pairs"], s["region_singles"], s["timesteps"]) for s in shapes}
            suite.add("bulk detecting region: 14 pairs + 4 singles over 8 rounds",
                      "Floquetified colour code detector", {(14, 4, 8)}, region)
            product = {(s["product_pairs"], s["product_singles"]) for s in shapes}
            suite.add("bulk detector formal product (informational)", "outcomes after cancelling",
                      product, product)


def _neighbour_only(sched, p: PauliOperator) -> bool:
    if p.weight() < 2:
        return True
    a, b = [sched.labels[q] for q in gf2.bits(p.support)]
    # labels are torus representatives, so compare modulo the torus lattice
    for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        if _same_site(sched, (a[0] + dx, a[1] + dy), b):
            return True
    return False


def _same_site(sched, p, q) -> bool:
    return zoo.Lattice2D(*sched.meta["torus"]).contains((p[0] - q[0], p[1] - q[1]))


SUITES: Dict[str, Callable[[VerificationSuite], None]] = {
    "repetition": verify_repetition,
    "422": verify_422,
    "bacon-shor": verify_bacon_shor,
    "double-hexagon": verify_double_hexagon,
    "colour-code": verify_colour_code,
    "floquet-colour-code": verify_floquet_colour_code,
}


def verify_code(name: str) -> VerificationSuite:
    if name not in SUITES:
        raise KeyError(f"no checks for {name!r}; choose from {', '.join(SUITES)}")
    suite = VerificationSuite(name)
    SUITES[name](suite)
    return suite
