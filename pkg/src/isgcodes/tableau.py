"""Stabilizer tableau whose generator signs are symbolic products of outcomes.

Measurement outcomes are never given numeric values. Each generator keeps a
``mask`` over an :class:`OutcomeRegistry`; its meaning is the product of the
masked outcomes times its Pauli (whose own sign lives in the phase, 0 or 2).
Deterministic measurements produce detectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Optional, Tuple

from . import gf2
from .pauli import DimensionError, PauliOperator, multiply, solve_membership


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class OutcomeId(NamedTuple):
    """Record symbol for the outcome of measuring ``pauli`` in round ``t``."""

    pauli: str
    t: int
    index: int

    def __str__(self) -> str:
        return f"m[{self.pauli}@t{self.t}]"


class OutcomeRegistry:
    """Assigns each outcome a bit position so masks can be plain ints."""

    def __init__(self) -> None:
        self.ids: List[OutcomeId] = []
        self._pos: dict[OutcomeId, int] = {}

    def bit(self, oid: OutcomeId) -> int:
        pos = self._pos.get(oid)
        if pos is None:
            pos = len(self.ids)
            self._pos[oid] = pos
            self.ids.append(oid)
        return 1 << pos

    def position(self, oid: OutcomeId) -> int:
        return self._pos[oid]

    def mask_of(self, oids: Iterable[OutcomeId]) -> int:
        m = 0
        for o in oids:
            m ^= self.bit(o)
        return m

    def ids_of(self, mask: int) -> frozenset:
        return frozenset(self.ids[i] for i in gf2.bits(mask))


@dataclass(frozen=True)
class SignedGenerator:
    pauli: PauliOperator
    mask: int = 0

    def times(self, other: "SignedGenerator") -> "SignedGenerator":
        return SignedGenerator(multiply(self.pauli, other.pauli), self.mask ^ other.mask)


@dataclass(frozen=True)
class Detector:
    mask: int
    sign: int
    t: int = -1
    outcomes: frozenset = field(default=frozenset(), compare=False)

    def __post_init__(self) -> None:
        if not self.mask:
            raise ValueError("a detector needs at least one outcome")
        if self.sign not in (1, -1):
            raise ValueError("detector sign must be +1 or -1")


class MeasureResult(NamedTuple):
    case: int
    detector: Optional[Detector]
    removed: Optional[SignedGenerator]


class StabilizerTableau:
    """Independent commuting signed generators: the current ISG."""

    def __init__(self, n: int, registry: Optional[OutcomeRegistry] = None,
                 generators: Optional[List[SignedGenerator]] = None) -> None:
        if n < 1:
            raise ValueError("need at least one qubit")
        self.n = n
        self.registry = registry if registry is not None else OutcomeRegistry()
        self.generators: List[SignedGenerator] = list(generators or [])

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.n, self.registry, self.generators)

    def rank(self) -> int:
        return len(self.generators)

    def paulis(self) -> List[PauliOperator]:
        return [g.pauli for g in self.generators]

    def contains(self, p: PauliOperator) -> Optional[Tuple[int, int]]:
        """If ``±p`` is in the group return ``(sign, mask)`` with ``p = sign * m(mask) * g``-product.

        ``sign`` is the numeric part: the product of the selected generators
        equals ``sign * p`` once their outcome records are multiplied in.
        Returns None otherwise (including when only ``±ip`` is present).
        """
        found = solve_membership(p, self.paulis())
        if found is None:
            return None
        sel, c = found
        if c % 2:
            return None
        mask = 0
        for i in gf2.bits(sel):
            mask ^= self.generators[i].mask
        return (1 if c == 0 else -1), mask

    def measure(self, p: PauliOperator, oid: OutcomeId) -> MeasureResult:
        if p.n != self.n:
            raise DimensionError(f"measured operator has {p.n} qubits, tableau has {self.n}")
        if not p.is_hermitian():
            raise ContractError(f"cannot measure non-Hermitian {p}")
        if p.is_identity():
            raise ContractError("cannot measure the identity")
        bit = self.registry.bit(oid)
        anti = [i for i, g in enumerate(self.generators) if not g.pauli.commutes(p)]
        if anti:
            first = anti[0]
            g0 = self.generators[first]
            for i in anti[1:]:
                self.generators[i] = self.generators[i].times(g0)
            self.generators[first] = SignedGenerator(p, bit)
            return MeasureResult(3, None, g0)
        hit = self.contains(p)
        if hit is not None:
            sign, mask = hit
            det = Detector(mask ^ bit, sign, oid.t, self.registry.ids_of(mask ^ bit))
            return MeasureResult(2, det, None)
        self.generators.append(SignedGenerator(p, bit))
        return MeasureResult(1, None, None)

    def check_invariants(self) -> None:
        gens = self.paulis()
        for i, a in enumerate(gens):
            if not a.is_hermitian() or a.phase % 2:
                raise AssertionError(f"generator {a} is not a signed Hermitian Pauli")
            for b in gens[i + 1:]:
                if not a.commutes(b):
                    raise AssertionError(f"generators {a} and {b} anticommute")
        if gf2.rank(g.vec for g in gens) != len(gens):
            raise AssertionError("generators are dependent")

    def format(self, labels=None) -> str:
        parts = []
        for g in self.generators:
            rec = " ".join(str(o) for o in sorted(self.registry.ids_of(g.mask), key=lambda o: (o.t, o.index)))
            op = g.pauli.to_labels(labels) if labels else str(g.pauli)
            parts.append(f"{rec} {op}".strip())
        return "<" + ", ".join(parts) + ">"


def format_detector(k: int, det: Detector, registry: OutcomeRegistry) -> str:
    ids = sorted(registry.ids_of(det.mask), key=lambda o: (o.t, o.index))
    sign = "+1" if det.sign == 1 else "-1"
    return f"D{k} sign={sign} : " + " ".join(str(o) for o in ids)
