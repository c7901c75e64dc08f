"""k-wise symmetric subsets of {0,1}^N = {0,1}^{n_1} x ... x {0,1}^{n_k}.

A k-wise symmetric set is stored by its set of weight tuples. Per-block
orders are ``"asc"`` or ``"desc"``; a set is PDC when, for some choice of
orders, its tuples form a downward closed subset of the product of the
ordered block projections.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import DomainError
from .symcore import PointSet, SymmetricSet, outer_interval, out_measure

__all__ = [
    "BlockStructure",
    "BlockSymmetricSet",
    "IndexLattice",
    "PDCResult",
    "poset_extremes",
    "index_lattice",
    "is_downward_closed",
    "pdc_check",
    "prefix_set",
    "outer_intact_check",
    "block_index_complexity",
]

ASC, DESC = "asc", "desc"


@dataclass(frozen=True)
class BlockStructure:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise DomainError(f"block sizes must be positive, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def N(self) -> int:
        return sum(self.sizes)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return out

    def block_vars(self, j: int) -> list[int]:
        off = self.offsets()[j]
        return list(range(off, off + self.sizes[j]))

    def split(self, x: Sequence[int]) -> list[tuple[int, ...]]:
        return [tuple(x[o:o + s]) for o, s in zip(self.offsets(), self.sizes)]

    def weights_of(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(part) for part in self.split(x))

    def all_tuples(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(s + 1) for s in self.sizes)))


@dataclass(frozen=True)
class BlockSymmetricSet:
    structure: BlockStructure
    tuples: frozenset

    def __post_init__(self):
        ts = set()
        for t in self.tuples:
            t = tuple(int(v) for v in t)
            if len(t) != self.structure.k:
                raise DomainError(f"weight tuple {t} has wrong length")
            for v, s in zip(t, self.structure.sizes):
                if not 0 <= v <= s:
                    raise DomainError(f"weight tuple {t} out of range")
            ts.add(t)
        object.__setattr__(self, "tuples", frozenset(ts))

    @classmethod
    def grid(cls, parts: Sequence[SymmetricSet]) -> BlockSymmetricSet:
        st = BlockStructure(tuple(p.n for p in parts))
        return cls(st, frozenset(itertools.product(*(p.weights for p in parts))))

    @classmethod
    def layer(cls, sizes: Sequence[int], weights: Sequence[int]) -> BlockSymmetricSet:
        return cls(BlockStructure(tuple(sizes)), frozenset([tuple(weights)]))

    @property
    def k(self) -> int:
        return self.structure.k

    @property
    def is_empty(self) -> bool:
        return not self.tuples

    def sorted_tuples(self) -> list[tuple[int, ...]]:
        return sorted(self.tuples)

    def projection(self, j: int) -> SymmetricSet:
        return SymmetricSet(self.structure.sizes[j], tuple({t[j] for t in self.tuples}))

    def complement(self) -> BlockSymmetricSet:
        return BlockSymmetricSet(
            self.structure, frozenset(t for t in self.structure.all_tuples() if t not in self.tuples)
        )

    def is_grid(self) -> bool:
        prod = set(itertools.product(*(self.projection(j).weights for j in range(self.k))))
        return prod == set(self.tuples)

    def __contains__(self, x) -> bool:
        return self.structure.weights_of(x) in self.tuples

    def points(self) -> list[tuple[int, ...]]:
        return [
            x for x in itertools.product((0, 1), repeat=self.structure.N)
            if self.structure.weights_of(x) in self.tuples
        ]

    def to_pointset(self) -> PointSet:
        return PointSet(self.structure.N, tuple(self.points()))

    def to_json(self) -> dict:
        return {"sizes": list(self.structure.sizes), "tuples": [list(t) for t in self.sorted_tuples()]}


class IndexLattice(NamedTuple):
    k: int
    q: tuple[int, ...]
    members: frozenset


class PDCResult(NamedTuple):
    order: tuple[str, ...]
    lattice: IndexLattice
    enumerations: tuple[tuple[int, ...], ...]


def poset_extremes(members, q: Sequence[int]):
    """Maximal elements of ``members`` and minimal elements of its complement.

    The complement is taken in all of N^k. A minimal non-member z has
    z_j <= q_j + 1 for every j (lowering a larger coordinate to q_j + 1 keeps
    it outside ``members``), so scanning the box [0, q_j + 1] suffices.
    """
    members = set(tuple(z) for z in members)
    k = len(q)
    for z in members:
        if len(z) != k or any(not 0 <= v <= b for v, b in zip(z, q)):
            raise DomainError(f"member {z} outside bounds {tuple(q)}")

    def le(x, y):
        return all(a <= b for a, b in zip(x, y))

    innext = {z for z in members if not any(w != z and le(z, w) for w in members)}
    non = [z for z in itertools.product(*(range(b + 2) for b in q)) if z not in members]
    outext = {z for z in non if not any(w != z and le(w, z) for w in non)}
    return innext, outext


def _enumerations(S: BlockSymmetricSet, order: Sequence[str]):
    enums = []
    for j, o in enumerate(order):
        ws = sorted(S.projection(j).weights)
        if o == DESC:
            ws.reverse()
        elif o != ASC:
            raise DomainError(f"unknown order {o!r}")
        enums.append(tuple(ws))
    return tuple(enums)


def index_lattice(S: BlockSymmetricSet, order: Sequence[str]) -> tuple[IndexLattice, tuple]:
    enums = _enumerations(S, order)
    pos = [{w: i for i, w in enumerate(e)} for e in enums]
    members = frozenset(tuple(pos[j][t[j]] for j in range(S.k)) for t in S.tuples)
    q = tuple(len(e) - 1 for e in enums)
    return IndexLattice(S.k, q, members), enums


def is_downward_closed(members) -> bool:
    for z in members:
        for j in range(len(z)):
            if z[j] > 0 and z[:j] + (z[j] - 1,) + z[j + 1:] not in members:
                return False
    return True


def pdc_check(S: BlockSymmetricSet) -> PDCResult | None:
    """First order choice (ascending preferred, blocks left to right) under
    which the index lattice is downward closed, or ``None``."""
    for order in itertools.product((ASC, DESC), repeat=S.k):
        lat, enums = index_lattice(S, order)
        if is_downward_closed(lat.members):
            return PDCResult(tuple(order), lat, enums)
    return None


def _require_pdc(S: BlockSymmetricSet, order) -> tuple[IndexLattice, tuple]:
    lat, enums = index_lattice(S, order)
    if not is_downward_closed(lat.members):
        raise DomainError(f"set is not PDC under order {tuple(order)}")
    return lat, enums


def prefix_set(S: BlockSymmetricSet, order: Sequence[str], j: int, z: int) -> SymmetricSet:
    enums = _enumerations(S, order)
    if not 0 <= z < len(enums[j]):
        raise DomainError(f"prefix index {z} outside [0,{len(enums[j]) - 1}]")
    return SymmetricSet(S.structure.sizes[j], enums[j][: z + 1])


def outer_intact_check(S: BlockSymmetricSet, order: Sequence[str]) -> bool:
    lat, _ = _require_pdc(S, order)
    innext, _ = poset_extremes(lat.members, lat.q)
    outs = [outer_interval(S.projection(j)) for j in range(S.k)]
    for z in innext:
        for j in range(S.k):
            if outer_interval(prefix_set(S, order, j, z[j])) != outs[j]:
                return False
    return True


def block_index_complexity(S: BlockSymmetricSet, order: Sequence[str]) -> int:
    """Sum of the blockwise outer measures, valid for outer intact PDC sets."""
    if S.is_empty:
        raise DomainError("index complexity of the empty set is undefined")
    if not outer_intact_check(S, order):
        raise DomainError("set is not outer intact under the given order")
    return sum(out_measure(S.projection(j)) for j in range(S.k))
