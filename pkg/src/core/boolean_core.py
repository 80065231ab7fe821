"""
Finite Boolean algebras over atom bitmasks.

An algebra with n atoms is the powerset of {0, ..., n-1}; an element is the
bitmask of the atoms below it. Filters and ideals are principal and stored by
their generator. Ultrafilters are identified with atoms, so a set of
ultrafilters is again a bitmask and the Stone mapping is the identity on masks.
"""
from typing import FrozenSet, Iterable, Iterator, List

import structlog
from pydantic import BaseModel, ConfigDict, Field

from src.core.errors import InputError

logger = structlog.get_logger(__name__)

MAX_ATOMS = 6


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def submasks(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask`` in increasing numeric order."""
    for candidate in range(mask + 1):
        if candidate & mask == candidate:
            yield candidate


def supermasks(mask: int, full: int) -> Iterator[int]:
    """Yield every mask between ``mask`` and ``full`` in increasing order."""
    for candidate in range(mask, full + 1):
        if candidate & mask == mask and candidate & full == candidate:
            yield candidate


class FinBoolAlg(BaseModel):
    """Powerset algebra of ``atom_count`` atoms."""

    model_config = ConfigDict(frozen=True)

    atom_count: int = Field(ge=0, le=MAX_ATOMS)

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def top(self) -> int:
        return self.size - 1

    @property
    def bottom(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.size)

    def atoms(self) -> List[int]:
        return [1 << k for k in range(self.atom_count)]

    def ultrafilters(self) -> List["Ultrafilter"]:
        return [Ultrafilter(atom_index=k) for k in range(self.atom_count)]

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return a | b

    def neg(self, a: int) -> int:
        return a ^ self.top

    def leq(self, a: int, b: int) -> bool:
        return a & b == a

    def check_element(self, a: int, name: str = "element") -> int:
        if not isinstance(a, int) or a < 0 or a >= self.size:
            raise InputError(f"{name} {a!r} is outside [0, {self.size}) for {self.atom_count} atoms")
        return a


class Filter(BaseModel):
    """The principal filter ``↑generator``; ``↑0`` is the improper filter."""

    model_config = ConfigDict(frozen=True)

    generator: int = Field(ge=0)

    def contains(self, x: int) -> bool:
        return self.generator & x == self.generator

    @property
    def is_proper(self) -> bool:
        return self.generator != 0


class Ideal(BaseModel):
    """The principal ideal ``↓generator``."""

    model_config = ConfigDict(frozen=True)

    generator: int = Field(ge=0)

    def contains(self, x: int) -> bool:
        return x & self.generator == x


class Ultrafilter(BaseModel):
    """The ultrafilter generated by atom ``atom_index``."""

    model_config = ConfigDict(frozen=True)

    atom_index: int = Field(ge=0)

    @property
    def atom(self) -> int:
        return 1 << self.atom_index

    def contains(self, x: int) -> bool:
        return bool(x >> self.atom_index & 1)


class UfSet(BaseModel):
    """A set of ultrafilters as a mask over atom indices.

    The Stone space of a finite algebra is discrete, so every UfSet is
    closed, open and clopen at once.
    """

    model_config = ConfigDict(frozen=True)

    mask: int = Field(ge=0)

    def members(self) -> List[int]:
        return list(iter_bits(self.mask))

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)


def phi(alg: FinBoolAlg, a: int) -> UfSet:
    """Stone mapping: the ultrafilters containing ``a``."""
    alg.check_element(a)
    return UfSet(mask=a)


def phi_filter(alg: FinBoolAlg, F: Filter) -> UfSet:
    """The ultrafilters extending ``F``."""
    alg.check_element(F.generator, "filter generator")
    return UfSet(mask=F.generator)


def filter_of_set(alg: FinBoolAlg, Y: UfSet) -> Filter:
    """``F_Y = {a : Y ⊆ φ(a)}``, generated by the join of the atoms of Y."""
    alg.check_element(Y.mask, "ultrafilter set")
    return Filter(generator=Y.mask)


def ideal_of_open(alg: FinBoolAlg, O: UfSet) -> Ideal:
    """``I_O = {a : φ(a) ⊆ O}``."""
    alg.check_element(O.mask, "ultrafilter set")
    return Ideal(generator=O.mask)


def neg_ideal(alg: FinBoolAlg, I: Ideal) -> Filter:
    """Elementwise complement ``¬I = {¬a : a ∈ I}``, which is ``↑¬g``."""
    return Filter(generator=alg.neg(I.generator))


def up_set(alg: FinBoolAlg, g: int) -> FrozenSet[int]:
    return frozenset(x for x in alg.elements() if g & x == g)


def down_set(alg: FinBoolAlg, g: int) -> FrozenSet[int]:
    return frozenset(x for x in alg.elements() if x & g == x)


def filter_generated_by(alg: FinBoolAlg, elements: Iterable[int]) -> Filter:
    generator = alg.top
    for x in elements:
        generator &= alg.check_element(x)
    return Filter(generator=generator)


def enumerate_filters(alg: FinBoolAlg) -> List[Filter]:
    return [Filter(generator=g) for g in alg.elements()]


def enumerate_ideals(alg: FinBoolAlg) -> List[Ideal]:
    return [Ideal(generator=g) for g in alg.elements()]


def enumerate_uf_sets(alg: FinBoolAlg) -> List[UfSet]:
    return [UfSet(mask=m) for m in alg.elements()]
