"""Phased Pauli operators in the symplectic representation.

An operator is ``i**phase * prod_j X_j**x_j Z_j**z_j`` with the X and Z bit
strings packed into ints (bit ``j`` is qubit ``j``). With this ordering the
product phase is a closed formula and Hermiticity is a parity check.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Hashable, Mapping, Optional, Sequence, Tuple

from . import gf2


class DimensionError(ValueError):
    """Operators on different numbers of qubits were combined."""


_SIGNS = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliOperator:
    n: int
    phase: int
    x: int
    z: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("bit string longer than n")
        object.__setattr__(self, "phase", self.phase % 4)

    # construction -----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOperator":
        return cls.from_letters(n, {qubit: letter})

    @classmethod
    def from_letters(cls, n: int, letters: Mapping[int, str], sign: int = 1) -> "PauliOperator":
        """Hermitian operator with the given letters; ``sign`` is +1 or -1."""
        x = z = 0
        phase = 0 if sign == 1 else 2
        for q, c in letters.items():
            if not 0 <= q < n:
                raise IndexError(f"qubit {q} out of range for n={n}")
            c = c.upper()
            if c == "X":
                x |= 1 << q
            elif c == "Z":
                z |= 1 << q
            elif c == "Y":
                x |= 1 << q
                z |= 1 << q
                phase += 1
            elif c != "I":
                raise ValueError(f"bad Pauli letter {c!r}")
        return cls(n, phase, x, z)

    @classmethod
    def from_string(cls, text: str) -> "PauliOperator":
        """Parse ``[+|-][i]`` followed by one letter per qubit, e.g. ``-iXYZI``."""
        m = re.fullmatch(r"\s*([+-]?)(i?)([IXYZ]*)\s*", text)
        if m is None or not m.group(3):
            raise ValueError(f"cannot parse Pauli literal {text!r}")
        sign, imag, body = m.groups()
        p = cls.from_letters(len(body), {j: c for j, c in enumerate(body)})
        extra = (2 if sign == "-" else 0) + (1 if imag else 0)
        return cls(p.n, p.phase + extra, p.x, p.z)

    # basic queries -----------------------------------------------------

    @property
    def y_count(self) -> int:
        return (self.x & self.z).bit_count()

    @property
    def vec(self) -> int:
        """Symplectic vector with X bits low and Z bits high."""
        return self.x | (self.z << self.n)

    @property
    def support(self) -> int:
        return self.x | self.z

    def weight(self) -> int:
        return self.support.bit_count()

    def is_hermitian(self) -> bool:
        return (self.phase - self.y_count) % 2 == 0

    def is_identity(self) -> bool:
        return not (self.x or self.z)

    def letter(self, q: int) -> str:
        return "IXZY"[((self.x >> q) & 1) | (((self.z >> q) & 1) << 1)]

    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    def sign_str(self) -> str:
        return _SIGNS[(self.phase - self.y_count) % 4]

    def __str__(self) -> str:
        return self.sign_str() + self.letters()

    def unsigned(self) -> "PauliOperator":
        """Same letters with sign +1 (Hermitian representative)."""
        return PauliOperator(self.n, self.y_count, self.x, self.z)

    def negate(self) -> "PauliOperator":
        return PauliOperator(self.n, self.phase + 2, self.x, self.z)

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def commutes(self, other: "PauliOperator") -> bool:
        return commutes(self, other)

    def to_labels(self, labels: Sequence[Hashable]) -> str:
        """Lattice form such as ``X(0,0) X(0,1)``; identity renders as ``I``."""
        parts = []
        for q in gf2.bits(self.support):
            lab = labels[q]
            text = "(" + ",".join(str(v) for v in lab) + ")" if isinstance(lab, tuple) else str(lab)
            parts.append(self.letter(q) + text)
        sign = self.sign_str()
        body = " ".join(parts) if parts else "I"
        return body if sign == "+" else sign + " " + body


def _check(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise DimensionError(f"operators act on {p.n} and {q.n} qubits")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product ``pq``; moving ``Z_p`` past ``X_q`` costs a factor -1 per overlap."""
    _check(p, q)
    phase = p.phase + q.phase + 2 * (p.z & q.x).bit_count()
    return PauliOperator(p.n, phase, p.x ^ q.x, p.z ^ q.z)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    _check(p, q)
    return not (((p.x & q.z) ^ (p.z & q.x)).bit_count() & 1)


def symplectic_product(u: int, v: int, n: int) -> int:
    """Symplectic form on packed ``x | z << n`` vectors."""
    mask = (1 << n) - 1
    return ((u & mask & (v >> n)) ^ ((u >> n) & v & mask)).bit_count() & 1


def from_vec(vec: int, n: int) -> PauliOperator:
    """Hermitian operator with the given packed symplectic vector."""
    mask = (1 << n) - 1
    x, z = vec & mask, vec >> n
    return PauliOperator(n, (x & z).bit_count(), x, z)


def product(ops: Sequence[PauliOperator], n: int) -> PauliOperator:
    acc = PauliOperator.identity(n)
    for o in ops:
        acc = multiply(acc, o)
    return acc


def solve_membership(p: PauliOperator, gens: Sequence[PauliOperator]) -> Optional[Tuple[int, int]]:
    """Find generators whose ordered product is ``i**c * p``.

    Returns ``(selection, c)`` where ``selection`` is a bit mask over ``gens``,
    or None when no product of generators matches ``p`` up to phase.
    """
    for g in gens:
        _check(p, g)
    sel = gf2.solve([g.vec for g in gens], p.vec)
    if sel is None:
        return None
    prod = product([gens[i] for i in gf2.bits(sel)], p.n)
    return sel, (prod.phase - p.phase) % 4


_TERM = re.compile(r"([IXYZ])\(([^)]*)\)")


def parse_pauli(text: str, n: Optional[int] = None, index: Optional[Dict[Hashable, int]] = None) -> PauliOperator:
    """Parse either the dense literal form or the lattice-labelled form.

    The lattice form is a list of terms like ``X(0,0) Z(3,1)`` with an optional
    leading sign; ``index`` maps each coordinate tuple to a qubit index.
    """
    text = text.strip()
    if "(" not in text:
        p = PauliOperator.from_string(text)
        if n is not None and p.n != n:
            raise DimensionError(f"literal {text!r} has {p.n} qubits, expected {n}")
        return p
    if index is None or n is None:
        raise ValueError("lattice-labelled Pauli needs a qubit label map")
    m = re.match(r"\s*([+-]?)(i?)\s*", text)
    sign, imag = m.group(1), m.group(2)
    rest = text[m.end():]
    letters: Dict[int, str] = {}
    pos = 0
    for term in _TERM.finditer(rest):
        if rest[pos:term.start()].strip():
            raise ValueError(f"cannot parse {text!r}")
        pos = term.end()
        coords = tuple(int(v) for v in term.group(2).split(","))
        key = coords if len(coords) > 1 else coords[0]
        if key not in index:
            raise KeyError(f"unknown qubit label {term.group(2)!r}")
        q = index[key]
        if q in letters:
            raise ValueError(f"qubit {key} appears twice in {text!r}")
        letters[q] = term.group(1)
    if rest[pos:].strip():
        raise ValueError(f"cannot parse {text!r}")
    p = PauliOperator.from_letters(n, letters)
    extra = (2 if sign == "-" else 0) + (1 if imag else 0)
    return PauliOperator(n, p.phase + extra, p.x, p.z)
