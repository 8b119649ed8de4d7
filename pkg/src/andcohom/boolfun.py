"""Boolean functions on a finite, ordered ground set.

A :class:`BoolFun` packs its values into one integer.  The element
``names[0]`` occupies the most significant bit, so the integer value *is*
the function's position in the canonical (lexicographic bitstring) order
of B^S; cube vertices in :mod:`andcohom.freecat` use the same index.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

DEFAULT_SIZE_LIMIT = 20


class GroundSetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GroundSet:
    names: tuple[str, ...]

    def __init__(self, names: Sequence[str]):
        names = tuple(str(n) for n in names)
        if len(set(names)) != len(names):
            raise ValueError(f"ground set labels must be distinct: {names}")
        object.__setattr__(self, "names", names)

    @classmethod
    def of_size(cls, n: int) -> "GroundSet":
        return cls([str(k) for k in range(n)])

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def position(self, s: str) -> int:
        try:
            return self.names.index(s)
        except ValueError:
            raise KeyError(f"unknown element {s!r} of ground set {self.names}") from None

    def bit(self, s: str | int) -> int:
        """Mask of the bit holding element ``s`` (by label or position)."""
        k = s if isinstance(s, int) else self.position(s)
        if not 0 <= k < len(self.names):
            raise KeyError(f"element index {k} out of range")
        return 1 << (len(self.names) - 1 - k)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    def check_limit(self, limit: int = DEFAULT_SIZE_LIMIT) -> None:
        if len(self.names) > limit:
            raise ValueError(f"|S| = {len(self.names)} exceeds configured size limit {limit}")

    def all_functions(self, limit: int = DEFAULT_SIZE_LIMIT) -> list["BoolFun"]:
        """All of B^S in canonical order."""
        self.check_limit(limit)
        return [BoolFun(self, v) for v in range(1 << len(self.names))]

    def const(self, value: int) -> "BoolFun":
        return BoolFun(self, self.full_mask if value else 0)

    def delta(self, s: str | int) -> "BoolFun":
        return BoolFun(self, self.bit(s))

    def from_bits(self, text: str) -> "BoolFun":
        return BoolFun.from_bitstring(self, text)


@dataclass(frozen=True, order=True)
class BoolFun:
    ground: GroundSet
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits <= self.ground.full_mask:
            raise ValueError(f"bit pattern {self.bits} does not fit |S| = {len(self.ground)}")

    @classmethod
    def from_bitstring(cls, ground: GroundSet, text: str) -> "BoolFun":
        text = text.strip()
        if len(text) != len(ground) or set(text) - {"0", "1"}:
            raise ValueError(f"bitstring {text!r} must have {len(ground)} characters from '01'")
        return cls(ground, int(text, 2) if text else 0)

    @classmethod
    def from_values(cls, ground: GroundSet, values: Sequence[int]) -> "BoolFun":
        return cls.from_bitstring(ground, "".join("1" if v else "0" for v in values))

    def bitstring(self) -> str:
        n = len(self.ground)
        return format(self.bits, f"0{n}b") if n else ""

    def __str__(self) -> str:
        return self.bitstring()

    @property
    def index(self) -> int:
        return self.bits

    def __call__(self, s: str | int) -> int:
        return 1 if self.bits & self.ground.bit(s) else 0

    def values(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.bitstring())

    def ones(self) -> int:
        return bin(self.bits).count("1")

    def zeros(self) -> list[str]:
        """Labels of f^{-1}(0), in ground-set order."""
        return [s for s in self.ground.names if not self(s)]

    def _check(self, other: "BoolFun") -> None:
        if self.ground != other.ground:
            raise GroundSetMismatch("Boolean functions live on different ground sets")

    def __and__(self, other: "BoolFun") -> "BoolFun":
        return conj(self, other)

    def __invert__(self) -> "BoolFun":
        return neg(self)


def conj(f: BoolFun, g: BoolFun) -> BoolFun:
    f._check(g)
    return BoolFun(f.ground, f.bits & g.bits)


def leq(f: BoolFun, g: BoolFun) -> bool:
    f._check(g)
    return f.bits & ~g.bits == 0


def neg(f: BoolFun) -> BoolFun:
    return BoolFun(f.ground, f.ground.full_mask ^ f.bits)


def delta(ground: GroundSet, s: str | int) -> BoolFun:
    return ground.delta(s)


def conj_all(ground: GroundSet, fs) -> BoolFun:
    """Conjunction of an iterable; the empty conjunction is the constant 1."""
    bits = ground.full_mask
    for f in fs:
        if f.ground != ground:
            raise GroundSetMismatch("Boolean functions live on different ground sets")
        bits &= f.bits
    return BoolFun(ground, bits)
