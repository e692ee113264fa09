"""Measurement schedules and the round-by-round runtime.

``run`` drives the tableau and the logical presentation through the rounds,
collecting detectors and per-timestep snapshots. Everything downstream
(parameters, ISG checks, error injection) reads from the resulting
:class:`RunReport`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from . import gf2
from .logical import LogicalPresentation, code_distance, lpg_init, lpg_measure, lpg_track_masks
from .pauli import PauliOperator, parse_pauli
from .tableau import ContractError, Detector, OutcomeId, OutcomeRegistry, StabilizerTableau


class ScheduleError(ValueError):
    """A schedule is malformed (non-commuting round, bad operator, parse error)."""


class EstablishmentError(RuntimeError):
    """The rank did not settle within the configured horizon."""


@dataclass
class MeasurementSchedule:
    """Rounds of pairwise-commuting Hermitian Paulis.

    ``period`` is ``len(rounds)`` for a Floquet schedule and None for a finite
    list followed by nothing (infinite period). ``labels`` optionally names
    each qubit, e.g. with lattice coordinates.
    """

    n: int
    rounds: List[List[PauliOperator]]
    period: Optional[int] = None
    labels: Optional[List[Hashable]] = None
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ScheduleError("schedule needs at least one qubit")
        if self.period is not None and self.period != len(self.rounds):
            raise ScheduleError(f"period {self.period} but {len(self.rounds)} rounds given")
        if self.period == 0:
            raise ScheduleError("a finite period must be positive")
        if self.labels is not None and len(self.labels) != self.n:
            raise ScheduleError("need exactly one label per qubit")
        if self.labels is not None and len(set(self.labels)) != self.n:
            raise ScheduleError("qubit labels must be distinct")
        self.validate()

    def validate(self) -> None:
        for t, rnd in enumerate(self.rounds):
            for j, p in enumerate(rnd):
                if p.n != self.n:
                    raise ScheduleError(f"round {t} item {j}: {p.n} qubits, expected {self.n}")
                if not p.is_hermitian() or p.is_identity():
                    raise ScheduleError(f"round {t} item {j}: {p} is not a non-trivial Hermitian Pauli")
                for k, q in enumerate(rnd[:j]):
                    if not p.commutes(q):
                        raise ScheduleError(f"round {t}: items {k} and {j} anticommute")

    def round(self, t: int) -> List[PauliOperator]:
        if self.period is not None:
            return self.rounds[t % self.period]
        return self.rounds[t] if t < len(self.rounds) else []

    @property
    def index(self) -> Optional[Dict[Hashable, int]]:
        if self.labels is None:
            return None
        return {lab: i for i, lab in enumerate(self.labels)}

    def period_rounds(self) -> int:
        return self.period if self.period is not None else 1

    def default_horizon(self) -> int:
        return 4 * self.period if self.period is not None else 50

    def is_css(self) -> bool:
        return all(not (p.x and p.z) for rnd in self.rounds for p in rnd)

    def show(self, p: PauliOperator) -> str:
        return p.to_labels(self.labels) if self.labels else str(p)


class MeasurementRecord(NamedTuple):
    t: int
    index: int
    pauli: PauliOperator
    oid: OutcomeId
    case: int


@dataclass
class RunReport:
    schedule: MeasurementSchedule
    t_max: int
    registry: OutcomeRegistry
    tableaux: List[StabilizerTableau] = field(default_factory=list)
    presentations: List[LogicalPresentation] = field(default_factory=list)
    detectors: List[Detector] = field(default_factory=list)
    measurements: List[MeasurementRecord] = field(default_factory=list)
    T: Optional[int] = None
    provisional: bool = False
    logical_masks: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.schedule.n

    @property
    def ranks(self) -> List[int]:
        return [tab.rank() for tab in self.tableaux]

    @property
    def ks(self) -> List[int]:
        return [lp.k for lp in self.presentations]

    def period_rounds(self) -> int:
        return self.schedule.period_rounds()

    def detectors_until(self, t: int) -> List[Detector]:
        return [d for d in self.detectors if d.t <= t]

    def signed_detector_basis(self, t: Optional[int] = None) -> gf2.Basis:
        """Span of detectors as ``mask << 1 | sign_bit`` vectors."""
        b = gf2.Basis()
        for d in (self.detectors if t is None else self.detectors_until(t)):
            b.add((d.mask << 1) | (d.sign == -1))
        return b

    def detector_basis(self, t: Optional[int] = None) -> gf2.Basis:
        b = gf2.Basis()
        for d in (self.detectors if t is None else self.detectors_until(t)):
            b.add(d.mask)
        return b

    def outcome_mask(self, pauli_text: str, t: int) -> int:
        """Mask of the outcome of measuring the given literal in round ``t``."""
        hits = [m for m in self.measurements if m.t == t and m.oid.pauli == pauli_text]
        if len(hits) != 1:
            raise KeyError(f"no unique outcome for {pauli_text} at round {t}")
        return self.registry.bit(hits[0].oid)


def _establishment(ranks: Sequence[int], span: int) -> Optional[int]:
    if not ranks:
        return None
    t = len(ranks) - 1
    while t > 0 and ranks[t - 1] == ranks[-1]:
        t -= 1
    return t if len(ranks) - t >= span else None


def run(sched: MeasurementSchedule, t_max: int, check: bool = False) -> RunReport:
    """Measure rounds ``0..t_max`` in list order and record everything.

    With ``check`` set, tableau and presentation invariants are asserted after
    every single measurement.
    """
    if t_max < 0:
        raise ContractError("t_max must be non-negative")
    registry = OutcomeRegistry()
    tab = StabilizerTableau(sched.n, registry)
    lp = lpg_init(sched.n)
    lmasks = [(0, 0)] * sched.n
    report = RunReport(sched, t_max, registry)
    for t in range(t_max + 1):
        for j, p in enumerate(sched.round(t)):
            oid = OutcomeId(sched.show(p), t, j)
            res = tab.measure(p, oid)
            lmasks = lpg_track_masks(lp, lmasks, p, res.case, registry.bit(oid),
                                     res.removed.mask if res.removed else 0)
            lp = lpg_measure(lp, p, res.case, res.removed.pauli if res.removed else None)
            if res.detector is not None:
                report.detectors.append(res.detector)
            report.measurements.append(MeasurementRecord(t, j, p, oid, res.case))
            if check:
                tab.check_invariants()
                lp.check_invariants(tab)
                if tab.rank() + lp.k != sched.n:
                    raise AssertionError("rank and logical count do not add up to n")
        report.tableaux.append(tab.copy())
        report.presentations.append(lp)
    report.logical_masks = lmasks
    report.T = _establishment(report.ranks, sched.period_rounds())
    report.provisional = sched.period is None
    return report


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: Optional[int]
    period: Optional[int]
    T: int
    w_max: int
    provisional: bool = False

    @property
    def d_defined(self) -> bool:
        """False when there is nothing to protect or no stabilizer to protect it."""
        return 0 < self.k < self.n

    def d_text(self) -> str:
        if self.d is not None:
            return str(self.d)
        return f">{self.w_max}" if self.d_defined else "-"

    def __str__(self) -> str:
        return f"[[{self.n},{self.k},{self.d_text()}]]"


def parameters(sched: MeasurementSchedule, horizon: Optional[int] = None, w_max: int = 4,
               report: Optional[RunReport] = None) -> CodeParameters:
    if report is None:
        rounds = horizon if horizon is not None else sched.default_horizon()
        report = run(sched, max(rounds, 1) - 1)
    if report.T is None:
        raise EstablishmentError(
            f"rank still changing within {report.t_max + 1} rounds; ranks tail = {report.ranks[-8:]}")
    k = report.n - report.ranks[report.T]
    d = code_distance(report, w_max) if 0 < k < report.n else None
    return CodeParameters(report.n, k, d, sched.period, report.T, w_max, report.provisional)


@dataclass(frozen=True)
class ExpectedGenerator:
    """An ISG element pattern: Pauli plus record outcomes (None: ignore records)."""

    pauli: PauliOperator
    outcomes: Optional[Tuple[Tuple[str, int], ...]] = None


def verify_isg_generators(report: RunReport, t: int, expected: Sequence[ExpectedGenerator]) -> bool:
    """Group equality between the ISG at ``t`` and the group generated by ``expected``.

    Record products are compared modulo the detectors emitted up to ``t``:
    two products of outcomes describe the same ISG element when their ratio
    is a deterministic product with the right numeric value.
    """
    tab = report.tableaux[t]
    if gf2.rank(e.pauli.vec for e in expected) != tab.rank():
        return False
    dets = report.signed_detector_basis(t)
    for e in expected:
        hit = tab.contains(e.pauli)
        if hit is None:
            return False
        if e.outcomes is None:
            continue
        sign, mask = hit
        want = 0
        for text, tt in e.outcomes:
            want ^= report.outcome_mask(text, tt)
        if not dets.contains(((mask ^ want) << 1) | (sign == -1)):
            return False
    return True


@dataclass(frozen=True)
class ErrorEvent:
    """Single-qubit Pauli applied to ``qubit`` after round ``t`` completes."""

    qubit: int
    pauli: str
    t: int


@dataclass(frozen=True)
class InjectResult:
    violated: frozenset
    flipped: int
    logical_effect: str


def inject(report: RunReport, errors: Iterable[ErrorEvent]) -> InjectResult:
    """Propagate a Pauli frame through the recorded measurements."""
    n = report.n
    events = sorted(errors, key=lambda e: e.t)
    for e in events:
        if not -1 <= e.t <= report.t_max:
            raise ContractError(f"error after round {e.t} is outside rounds 0..{report.t_max}")
        if not 0 <= e.qubit < n or e.pauli not in ("X", "Y", "Z"):
            raise ContractError(f"bad error event {e}")
    frame = PauliOperator.identity(n)
    flipped = 0
    pos = 0
    for m in report.measurements:
        while pos < len(events) and events[pos].t < m.t:
            frame = frame * PauliOperator.single(n, events[pos].qubit, events[pos].pauli)
            pos += 1
        if not frame.commutes(m.pauli):
            flipped |= report.registry.bit(m.oid)
    for e in events[pos:]:
        frame = frame * PauliOperator.single(n, e.qubit, e.pauli)
    violated = frozenset(i for i, d in enumerate(report.detectors) if (d.mask & flipped).bit_count() & 1)
    return InjectResult(violated, flipped, _residual_effect(report, frame, flipped))


def _residual_effect(report: RunReport, frame: PauliOperator, flipped: int) -> str:
    """Classify what the frame does relative to the state the outcome record predicts.

    An operator whose value is tracked by outcome mask ``M`` sees a discrepancy
    when the frame anticommutes with it an odd number of times more than the
    recorded flips inside ``M``. Any stabilizer discrepancy means the error is
    still pending detection; otherwise the logical discrepancies name its effect.
    """
    def off(p: PauliOperator, mask: int) -> bool:
        return (not frame.commutes(p)) ^ bool((mask & flipped).bit_count() & 1)

    if any(off(g.pauli, g.mask) for g in report.tableaux[-1].generators):
        return "syndrome"
    parts = []
    for j, ((x, z), (mx, mz)) in enumerate(zip(report.presentations[-1].pairs, report.logical_masks)):
        has_x, has_z = off(z, mz), off(x, mx)
        if has_x or has_z:
            parts.append(("Y" if has_x and has_z else "X" if has_x else "Z") + str(j))
    return "logical:" + ",".join(parts) if parts else "trivial"


def parse_error_spec(text: str, sched: MeasurementSchedule) -> List[ErrorEvent]:
    """Parse ``X@q3,t2`` items (comma- or semicolon-separated lists of them)."""
    out = []
    for m in re.finditer(r"([XYZ])@q(\(?[-\d,]+\)?|\d+),t(-?\d+)", text):
        q = m.group(2)
        if q.startswith("("):
            key = tuple(int(v) for v in q.strip("()").split(","))
            if sched.index is None or key not in sched.index:
                raise ScheduleError(f"unknown qubit label {q}")
            qi = sched.index[key]
        else:
            qi = int(q)
        out.append(ErrorEvent(qi, m.group(1), int(m.group(3))))
    if not out:
        raise ScheduleError(f"cannot parse error specification {text!r}")
    return out


# schedule files -----------------------------------------------------------

_HEADER = re.compile(r"n\s*=\s*(\d+)\s+period\s*=\s*(\d+|inf)\s*$")


def parse_schedule(text: str, name: str = "") -> MeasurementSchedule:
    """Read the line-oriented schedule format.

    The first non-comment line is ``n=<int> period=<int|inf>``. An optional
    ``qubits: (0,0) (0,1) ...`` line assigns lattice labels. Each round starts
    with ``round <t>:`` and lists one Pauli literal per line. ``#`` starts a
    comment.
    """
    n = period = None
    labels = None
    rounds: List[List[PauliOperator]] = []
    current: Optional[List[PauliOperator]] = None
    index = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if n is None:
                m = _HEADER.match(line)
                if m is None:
                    raise ScheduleError("expected header 'n=<int> period=<int|inf>'")
                n = int(m.group(1))
                period = None if m.group(2) == "inf" else int(m.group(2))
                continue
            if line.startswith("qubits:"):
                labels = [tuple(int(v) for v in lab.split(","))
                          for lab in re.findall(r"\(([^)]*)\)", line)]
                index = {lab: i for i, lab in enumerate(labels)}
                continue
            m = re.fullmatch(r"round\s+(\d+)\s*:", line)
            if m:
                if int(m.group(1)) != len(rounds):
                    raise ScheduleError(f"rounds must be numbered consecutively from 0, got {m.group(1)}")
                current = []
                rounds.append(current)
                continue
            if current is None:
                raise ScheduleError("Pauli literal before any 'round <t>:' line")
            current.append(parse_pauli(line, n, index))
        except (ValueError, KeyError) as exc:
            raise ScheduleError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ScheduleError("empty schedule file")
    return MeasurementSchedule(n, rounds, period, labels, name)


def dump_schedule(sched: MeasurementSchedule) -> str:
    lines = [f"n={sched.n} period={sched.period if sched.period is not None else 'inf'}"]
    if sched.labels:
        lines.append("qubits: " + " ".join(
            "(" + ",".join(str(v) for v in lab) + ")" for lab in sched.labels))
    for t, rnd in enumerate(sched.rounds):
        lines.append(f"round {t}:")
        lines.extend(sched.show(p) for p in rnd)
    return "\n".join(lines) + "\n"


def compare_schedules(a: MeasurementSchedule, b: MeasurementSchedule, w_max: int = 4) -> dict:
    """Side-by-side parameters and detector counts for two schedules.

    Used to inspect variants such as merged or cyclically shifted rounds; it
    makes no claim about whether such variants define the same code.
    """
    out = {}
    for key, s in (("a", a), ("b", b)):
        rep = run(s, s.default_horizon() - 1)
        try:
            params = str(parameters(s, w_max=w_max, report=rep))
        except EstablishmentError:
            params = "unestablished"
        out[key] = {"params": params, "T": rep.T, "detectors": len(rep.detectors),
                    "rounds": rep.t_max + 1}
    out["same_parameters"] = out["a"]["params"] == out["b"]["params"]
    return out
