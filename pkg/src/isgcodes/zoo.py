"""Constructors for the code instances the package knows by name."""

from __future__ import annotations

import os
import random
import re
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Tuple

from . import gf2
from .pauli import PauliOperator
from .schedule import ExpectedGenerator, MeasurementSchedule, ScheduleError


def _op(n: int, letters: Dict[int, str]) -> PauliOperator:
    return PauliOperator.from_letters(n, letters)


def _lit(text: str) -> PauliOperator:
    return PauliOperator.from_string(text)


def make_repetition() -> MeasurementSchedule:
    return MeasurementSchedule(2, [[_lit("ZZ")]], period=1, name="repetition")


def make_422() -> MeasurementSchedule:
    return MeasurementSchedule(4, [[_lit("ZZZZ")], [_lit("XXXX")]], period=2, name="422")


def make_bacon_shor() -> MeasurementSchedule:
    return MeasurementSchedule(4, [[_lit("XXII"), _lit("IIXX")], [_lit("ZIZI"), _lit("IZIZ")]],
                               period=2, name="bacon-shor")


def make_bacon_shor_singletons() -> MeasurementSchedule:
    """Gauge generators of the 2x2 Bacon-Shor code measured one per round."""
    return MeasurementSchedule(4, [[_lit("XXII")], [_lit("IZIZ")], [_lit("IIXX")], [_lit("ZIZI")]],
                               period=4, name="bacon-shor-singletons")


# double hexagon -----------------------------------------------------------

def hexagon_qubit(i: int, j: int) -> int:
    """Index of qubit (i mod 6, j mod 2)."""
    return 2 * (i % 6) + (j % 2)


DOUBLE_HEXAGON_LABELS = [(i, j) for i in range(6) for j in range(2)]


def double_hexagon_round(t: int) -> List[PauliOperator]:
    b = "X" if t % 2 == 0 else "Z"
    q = hexagon_qubit
    groups = [
        [q(t, 0)], [q(t, 1)],
        [q(t + 1, 0), q(t + 2, 0)], [q(t + 1, 1), q(t + 2, 1)],
        [q(t + 3, 0), q(t + 3, 1)],
        [q(t + 4, 0), q(t + 5, 0)], [q(t + 4, 1), q(t + 5, 1)],
    ]
    return [_op(12, {k: b for k in g}) for g in groups]


def make_double_hexagon() -> MeasurementSchedule:
    return MeasurementSchedule(12, [double_hexagon_round(t) for t in range(6)], period=6,
                               labels=list(DOUBLE_HEXAGON_LABELS), name="double-hexagon")


def double_hexagon_s(t: int) -> PauliOperator:
    b = "X" if t % 2 == 0 else "Z"
    return _op(12, {hexagon_qubit(i, j): b for i in (t, t - 1, t - 2) for j in (0, 1)})


def double_hexagon_isg(t: int) -> List[ExpectedGenerator]:
    """Expected established ISG at ``t``: the round-``t`` operators and three weight-six extras."""
    gens = double_hexagon_round(t) + [double_hexagon_s(t - d) for d in (1, 2, 3)]
    return [ExpectedGenerator(g) for g in gens]


# colour code on a torus ---------------------------------------------------

@dataclass(frozen=True)
class HoneycombLattice:
    a: int
    b: int
    faces: Tuple[Tuple[int, ...], ...]
    colours: Tuple[int, ...]

    @property
    def n(self) -> int:
        return 2 * self.a * self.b


def honeycomb_torus(a: int, b: int) -> HoneycombLattice:
    """Honeycomb with ``a * b`` hexagons on a torus; both sizes must be multiples of 3.

    Vertex ``A(i, j)`` has index ``2 * (i * b + j)`` and ``B(i, j)`` the next
    one. Face ``(i, j)`` gets colour ``(i - j) mod 3``, which is a proper
    colouring exactly when it is consistent around both cycles of the torus.
    """
    if a < 3 or b < 3 or a % 3 or b % 3:
        raise ValueError(
            f"torus ({a},{b}) rejected: both dimensions must be positive multiples of 3 "
            "so that the hexagons admit a consistent 3-colouring")

    def A(i, j):
        return 2 * ((i % a) * b + (j % b))

    def B(i, j):
        return A(i, j) + 1

    faces, colours = [], []
    for i in range(a):
        for j in range(b):
            faces.append((A(i, j), B(i, j), A(i + 1, j), B(i + 1, j - 1), A(i + 1, j - 1), B(i, j - 1)))
            colours.append((i - j) % 3)
    return HoneycombLattice(a, b, tuple(faces), tuple(colours))


def make_colour_code_torus(a: int, b: int) -> MeasurementSchedule:
    lat = honeycomb_torus(a, b)
    n = lat.n
    zs = [_op(n, {v: "Z" for v in f}) for f in lat.faces]
    xs = [_op(n, {v: "X" for v in f}) for f in lat.faces]
    return MeasurementSchedule(n, [zs, xs], period=2, name=f"colour-code-{a}x{b}")


# floquetified colour code -------------------------------------------------

PERIOD = 13
TILING = ((3, 1), (-2, 8))
STEP = (-1, -3)
NEIGHBOUR_SHIFTS = {(0, 1): -2, (1, 0): -8, (0, -1): 2, (-1, 0): 8}
TILE_ENV = "ISGCODES_TILE"


class TileError(ValueError):
    """A tile file violates one of the structural relations it must satisfy."""


@dataclass(frozen=True)
class TileEntry:
    t: int
    x: int
    y: int
    basis: str
    partner: Optional[Tuple[int, int]] = None  # offset to the other qubit

    @property
    def arity(self) -> int:
        return 1 if self.partner is None else 2


class Lattice2D:
    """Integer lattice spanned by two vectors, with residues for cosets."""

    def __init__(self, u: Tuple[int, int], v: Tuple[int, int]) -> None:
        self.u, self.v = u, v
        self.det = u[0] * v[1] - u[1] * v[0]
        if self.det == 0:
            raise ValueError("degenerate lattice")

    def key(self, p: Tuple[int, int]) -> Tuple[int, int]:
        x, y = p
        d = abs(self.det)
        s = 1 if self.det > 0 else -1
        return (s * (x * self.v[1] - y * self.v[0]) % d, s * (-x * self.u[1] + y * self.u[0]) % d)

    def contains(self, p: Tuple[int, int]) -> bool:
        return self.key(p) == (0, 0)

    def representatives(self) -> List[Tuple[int, int]]:
        """One point per coset, found by walking a box large enough to hit them all."""
        reps: Dict[Tuple[int, int], Tuple[int, int]] = {}
        r = abs(self.u[0]) + abs(self.v[0]) + abs(self.u[1]) + abs(self.v[1])
        for x in range(-r, r + 1):
            for y in range(-r, r + 1):
                reps.setdefault(self.key((x, y)), (x, y))
        if len(reps) != abs(self.det):
            raise AssertionError("representative search did not cover every coset")
        return sorted(reps.values(), key=lambda p: (p[0], p[1]))


@dataclass
class FloquetTile:
    entries: List[TileEntry]
    period: int = PERIOD
    tiling: Tuple[Tuple[int, int], Tuple[int, int]] = TILING
    step: Tuple[int, int] = STEP

    def __post_init__(self) -> None:
        self._table = self._expand()
        self.validate()

    def _expand(self) -> Dict[Tuple[int, Tuple[int, int]], Tuple[str, Optional[Tuple[int, int]]]]:
        """Fill every (t, qubit class) from the listed entries via the step translation."""
        lat = Lattice2D(*self.tiling)
        table: Dict = {}
        for e in self.entries:
            if not 0 <= e.t < self.period:
                raise TileError(f"entry time {e.t} outside 0..{self.period - 1}")
            for s in range(self.period):
                t = (e.t + s) % self.period
                p = (e.x + s * self.step[0], e.y + s * self.step[1])
                key = (t, lat.key(p))
                val = (e.basis, e.partner)
                old = table.get(key)
                if old is not None and old != val:
                    raise TileError(
                        f"translation relation violated: qubit {p} at t={t} gets both {old} and {val}")
                table[key] = val
        self.lattice = lat
        return table

    def measurement(self, x: int, y: int, t: int) -> Tuple[str, Optional[Tuple[int, int]]]:
        key = (t % self.period, self.lattice.key((x, y)))
        if key not in self._table:
            raise TileError(f"no entry for qubit ({x},{y}) at t={t % self.period}")
        return self._table[key]

    def validate(self) -> None:
        if self.period != PERIOD:
            raise TileError(f"period must be {PERIOD}, got {self.period}")
        lat = self.lattice
        # the step must return to the same class only after a full period
        for s in range(1, self.period + 1):
            back = lat.contains((s * self.step[0], s * self.step[1]))
            if back != (s == self.period):
                raise TileError(f"step translation has order != {self.period} modulo the tiling")
        reps = lat.representatives()
        for t in range(self.period):
            for x, y in reps:
                basis, partner = self.measurement(x, y, t)
                if basis not in ("X", "Z"):
                    raise TileError(f"bad basis {basis!r}")
                if partner is not None:
                    if partner not in NEIGHBOUR_SHIFTS:
                        raise TileError(f"partner offset {partner} is not a lattice neighbour")
                    ob, op = self.measurement(x + partner[0], y + partner[1], t)
                    if ob != basis or op != (-partner[0], -partner[1]):
                        raise TileError(
                            f"partner relation violated at ({x},{y}) t={t}: neighbour has {ob} {op}")
                for (dx, dy), shift in NEIGHBOUR_SHIFTS.items():
                    nb, np_ = self.measurement(x + dx, y + dy, t + shift)
                    if nb == basis or np_ != partner:
                        raise TileError(
                            f"neighbour relation violated: ({x},{y}) at t={t} vs ({x + dx},{y + dy}) "
                            f"at t={(t + shift) % self.period}")

    def qubit_schedule(self, x: int, y: int) -> List[Tuple[str, Optional[Tuple[int, int]]]]:
        return [self.measurement(x, y, t) for t in range(self.period)]


_ENTRY = re.compile(
    r"t\s*=\s*(\d+)\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s+([XZ])"
    r"(?:\s+partner\s*=\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))?\s*$")
_TILE_HEADER = re.compile(
    r"period\s*=\s*(\d+)\s+tiling\s*=\s*\((-?\d+),(-?\d+)\),\((-?\d+),(-?\d+)\)\s+step\s*=\s*\((-?\d+),(-?\d+)\)\s*$")


def parse_tile(text: str) -> FloquetTile:
    """Parse a tile file; ``partner`` gives the partner qubit's tile coordinates."""
    header = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = _TILE_HEADER.match(line)
            if header is None:
                raise TileError(f"line {lineno}: expected 'period=.. tiling=(..),(..) step=(..)' header")
            continue
        m = _ENTRY.match(line)
        if m is None:
            raise TileError(f"line {lineno}: cannot parse tile entry {line!r}")
        t, x, y = int(m.group(1)), int(m.group(2)), int(m.group(3))
        partner = None
        if m.group(5) is not None:
            partner = (int(m.group(5)) - x, int(m.group(6)) - y)
        entries.append(TileEntry(t, x, y, m.group(4), partner))
    if header is None:
        raise TileError("empty tile file")
    g = [int(v) for v in header.groups()]
    return FloquetTile(entries, g[0], ((g[1], g[2]), (g[3], g[4])), (g[5], g[6]))


def default_tile_path() -> str:
    env = os.environ.get(TILE_ENV)
    if env:
        return env
    return str(resources.files("isgcodes") / "data" / "floquet_colour_code.tile")


def load_floquet_tile(path: Optional[str] = None) -> FloquetTile:
    with open(path or default_tile_path(), encoding="utf-8") as fh:
        return parse_tile(fh.read())


def make_floquetified_colour_code_torus(tile: FloquetTile, cols: int, rows: int) -> MeasurementSchedule:
    """Torus of ``cols`` by ``rows`` tiles.

    Columns repeat along the first tiling vector and rows along the second,
    so the torus identifies points differing by ``cols * u`` or ``rows * v``.
    """
    if cols < 1 or rows < 1:
        raise ValueError("need at least one column and one row of tiles")
    u, v = tile.tiling
    torus = Lattice2D((cols * u[0], cols * u[1]), (rows * v[0], rows * v[1]))
    labels = torus.representatives()
    index = {torus.key(p): i for i, p in enumerate(labels)}
    n = len(labels)
    rounds = []
    for t in range(tile.period):
        seen = set()
        rnd = []
        for i, (x, y) in enumerate(labels):
            basis, partner = tile.measurement(x, y, t)
            if partner is None:
                rnd.append(_op(n, {i: basis}))
                continue
            j = index[torus.key((x + partner[0], y + partner[1]))]
            if i == j:
                raise ScheduleError("torus too small: a qubit is its own neighbour")
            pair = (min(i, j), max(i, j))
            if pair in seen:
                continue
            seen.add(pair)
            rnd.append(_op(n, {i: basis, j: basis}))
        rounds.append(rnd)
    return MeasurementSchedule(n, rounds, period=tile.period, labels=labels,
                               name=f"floquet-colour-code-{cols}x{rows}",
                               meta={"torus": (torus.u, torus.v)})


def by_name(name: str) -> MeasurementSchedule:
    builders = {
        "repetition": make_repetition,
        "422": make_422,
        "bacon-shor": make_bacon_shor,
        "bacon-shor-singletons": make_bacon_shor_singletons,
        "double-hexagon": make_double_hexagon,
        "colour-code": lambda: make_colour_code_torus(3, 3),
        "floquet-colour-code": lambda: make_floquetified_colour_code_torus(load_floquet_tile(), 3, 1),
    }
    if name not in builders:
        raise KeyError(f"unknown code {name!r}; choose from {', '.join(sorted(builders))}")
    return builders[name]()


NAMES = ("repetition", "422", "bacon-shor", "bacon-shor-singletons", "double-hexagon",
         "colour-code", "floquet-colour-code")


def random_schedule(rng: random.Random, n: int, n_rounds: int, max_per_round: int = 3,
                    periodic: bool = True) -> MeasurementSchedule:
    """Random schedule with rounds of pairwise-commuting Hermitian Paulis."""
    rounds = []
    for _ in range(n_rounds):
        rnd: List[PauliOperator] = []
        for _ in range(rng.randint(1, max_per_round)):
            for _ in range(20):
                x, z = rng.getrandbits(n), rng.getrandbits(n)
                if not x | z:
                    continue
                p = PauliOperator(n, (x & z).bit_count() % 4 + 2 * rng.getrandbits(1), x, z)
                if all(p.commutes(q) for q in rnd):
                    rnd.append(p)
                    break
        rounds.append(rnd)
    return MeasurementSchedule(n, rounds, period=n_rounds if periodic else None, name="random")
