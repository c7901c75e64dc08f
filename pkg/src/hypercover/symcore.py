"""Weight-set calculus for symmetric subsets of the hypercube {0,1}^n.

A symmetric set is stored by its weight set only; expansion into points
happens only when a caller explicitly asks for a :class:`PointSet`.

Coordinates of bit vectors are 0-based throughout the library.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import DomainError
from . import _kernels

__all__ = [
    "SymmetricSet",
    "PeripheralInterval",
    "PointSet",
    "IndexWitness",
    "canonical_weight_window",
    "mu",
    "mu_bar",
    "lambda_measure",
    "lambda_bar",
    "inner_interval",
    "outer_interval",
    "inn_measure",
    "out_measure",
    "is_peripheral",
    "index_complexity_symmetric",
    "index_complexity_bruteforce",
    "separation",
    "separation_exhaustive",
    "complement_transform",
]


@dataclass(frozen=True)
class SymmetricSet:
    n: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.n!r}")
        ws = tuple(sorted(set(int(w) for w in self.weights)))
        for w in ws:
            if not 0 <= w <= self.n:
                raise DomainError(f"weight {w} outside [0,{self.n}]")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def full(cls, n: int) -> SymmetricSet:
        return cls(n, tuple(range(n + 1)))

    @classmethod
    def empty(cls, n: int) -> SymmetricSet:
        return cls(n, ())

    @classmethod
    def layer(cls, n: int, w: int) -> SymmetricSet:
        return cls(n, (w,))

    @property
    def is_empty(self) -> bool:
        return not self.weights

    @property
    def is_full(self) -> bool:
        return len(self.weights) == self.n + 1

    def complement(self) -> SymmetricSet:
        present = set(self.weights)
        return SymmetricSet(self.n, tuple(w for w in range(self.n + 1) if w not in present))

    def __contains__(self, x) -> bool:
        if isinstance(x, int):
            return x in self.weights
        return sum(x) in self.weights

    def points(self) -> list[tuple[int, ...]]:
        """All cube points whose Hamming weight lies in the weight set, sorted."""
        ws = set(self.weights)
        return [x for x in itertools.product((0, 1), repeat=self.n) if sum(x) in ws]

    def to_pointset(self) -> PointSet:
        return PointSet(self.n, tuple(self.points()))

    def to_json(self) -> dict:
        return {"n": self.n, "weights": list(self.weights)}


@dataclass(frozen=True)
class PeripheralInterval:
    """The symmetric set with weights [0,a] ∪ [b,n]."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if not (-1 <= self.a <= self.n - 1 and 1 <= self.b <= self.n + 1 and self.a < self.b):
            raise DomainError(f"invalid peripheral interval (n={self.n}, a={self.a}, b={self.b})")

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(range(0, self.a + 1)) + tuple(range(self.b, self.n + 1))

    @property
    def size(self) -> int:
        """Number of weights, |I_{n,a,b}|."""
        return (self.a + 1) + (self.n - self.b + 1)

    def as_set(self) -> SymmetricSet:
        return SymmetricSet(self.n, self.weights)

    def to_json(self) -> dict:
        return {"n": self.n, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class PointSet:
    n: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        pts = []
        seen = set()
        for p in self.points:
            p = tuple(int(c) for c in p)
            if len(p) != self.n or any(c not in (0, 1) for c in p):
                raise DomainError(f"point {p} is not a 0/1 vector of length {self.n}")
            if p not in seen:
                seen.add(p)
                pts.append(p)
        object.__setattr__(self, "points", tuple(sorted(pts)))

    def __len__(self):
        return len(self.points)

    def to_json(self) -> dict:
        return {"n": self.n, "points": [list(p) for p in self.points]}


class IndexWitness(NamedTuple):
    value: int
    point: tuple[int, ...]
    coords: tuple[int, ...]


def canonical_weight_window(n: int, i: int) -> SymmetricSet:
    """T_{n,i}: the symmetric set with weights [0,i-1] ∪ [n-i+1,n]."""
    if not 0 <= i <= n:
        raise DomainError(f"window index {i} outside [0,{n}]")
    return SymmetricSet(n, tuple(range(0, i)) + tuple(range(n - i + 1, n + 1)))


def _window_inside(n: int, i: int, weights: set) -> bool:
    return all(w in weights for w in range(0, i)) and all(
        w in weights for w in range(n - i + 1, n + 1)
    )


def mu(S: SymmetricSet) -> int:
    n = S.n
    ws = set(S.weights)
    best = 0
    for i in range(0, (n + 1) // 2 + 1):
        if _window_inside(n, i, ws):
            best = i
    return best


def lambda_measure(S: SymmetricSet) -> int:
    return len(S.weights) - mu(S)


def mu_bar(S: SymmetricSet) -> int:
    return mu(S.complement())


def lambda_bar(S: SymmetricSet) -> int:
    return lambda_measure(S.complement())


def inner_interval(S: SymmetricSet) -> PeripheralInterval:
    """Largest peripheral interval contained in ``S``.

    The full cube gets the conventional J_{n,⌊n/2⌋,⌊n/2⌋+1}.
    """
    n = S.n
    if S.is_full:
        return PeripheralInterval(n, n // 2, n // 2 + 1)
    ws = set(S.weights)
    a = -1
    while a + 1 in ws:
        a += 1
    b = n + 1
    while b - 1 in ws:
        b -= 1
    return PeripheralInterval(n, a, b)


def _missing_runs(S: SymmetricSet) -> list[tuple[int, int]]:
    ws = set(S.weights)
    runs = []
    start = None
    for w in range(S.n + 1):
        if w not in ws:
            if start is None:
                start = w
        elif start is not None:
            runs.append((start, w - 1))
            start = None
    if start is not None:
        runs.append((start, S.n))
    return runs


def outer_interval(S: SymmetricSet) -> PeripheralInterval:
    """Smallest peripheral interval containing ``S``.

    Among minimum-size candidates the one minimising |a+b-n| is taken; when
    the mirror pair J_{n,a,b}, J_{n,n-b,n-a} ties, the one with a > n-b wins.
    A minimum-size containing interval leaves out exactly one maximal run of
    missing weights, so candidates are the longest runs.
    """
    n = S.n
    if S.is_full:
        candidates = [(a, a + 1) for a in range(0, n)]
    else:
        runs = _missing_runs(S)
        longest = max(e - s for s, e in runs)
        candidates = [(s - 1, e + 1) for s, e in runs if e - s == longest]
    best_key = min(abs(a + b - n) for a, b in candidates)
    tied = [(a, b) for a, b in candidates if abs(a + b - n) == best_key]
    if len(tied) == 1:
        a, b = tied[0]
    else:
        # exactly the mirror pair {J_{n,a,b}, J_{n,n-b,n-a}} remains
        a, b = next((a, b) for a, b in tied if a > n - b)
    return PeripheralInterval(n, a, b)


def inn_measure(S: SymmetricSet) -> int:
    J = inner_interval(S)
    m = min(J.a, S.n - J.b) + 1
    window = set(canonical_weight_window(S.n, m).weights)
    return m + sum(1 for w in S.weights if w not in window)


def out_measure(S: SymmetricSet) -> int:
    J = outer_interval(S)
    return J.a + S.n - J.b + 1


def is_peripheral(S: SymmetricSet) -> bool:
    """True iff the weight set has the form [0,a] ∪ [b,n]."""
    return len(_missing_runs(S)) <= 1


def index_complexity_symmetric(S: SymmetricSet) -> IndexWitness:
    """Index complexity of a symmetric set via its outer interval.

    The witness separates ``point`` from every other point of ``S`` on the
    coordinates ``coords`` (0-based).
    """
    if S.is_empty:
        raise DomainError("index complexity of the empty set is undefined")
    n = S.n
    J = outer_interval(S)
    a, b = J.a, J.b
    r = a + n - b + 1
    if a >= n - b:
        point = (1,) * a + (0,) * (n - a)
        coords = tuple(range(0, r))
    else:
        point = (1,) * b + (0,) * (n - b)
        coords = tuple(range(b - a - 1, n))
    return IndexWitness(r, point, coords)


def _to_mask(x: Sequence[int]) -> int:
    m = 0
    for i, c in enumerate(x):
        if c:
            m |= 1 << i
    return m


def index_complexity_bruteforce(S: PointSet) -> IndexWitness:
    """Exact index complexity by exhaustive search.

    Coordinate subsets are tried by increasing size, lexicographically within
    a size; for each subset the points are scanned in sorted order. The first
    separated point found is the witness.
    """
    if len(S) == 0:
        raise DomainError("index complexity of the empty set is undefined")
    n = S.n
    masks = []
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            masks.append(_to_mask([1 if i in combo else 0 for i in range(n)]))
    pts = [_to_mask(p) for p in S.points]
    mi, pi = _kernels.first_separating(pts, masks)
    if mi < 0:  # pragma: no cover - the full coordinate set always separates
        raise AssertionError("no separating coordinate set found")
    coords = tuple(i for i in range(n) if masks[mi] >> i & 1)
    return IndexWitness(len(coords), S.points[pi], coords)


def separation(n: int, p: Sequence[int], I0: Sequence[int], I1: Sequence[int]) -> PeripheralInterval:
    """Maximal symmetric set all of whose points differ from ``p`` on I0 ⊔ I1."""
    p = tuple(p)
    if len(p) != n:
        raise DomainError(f"point has {len(p)} coordinates, expected {n}")
    I0, I1 = set(I0), set(I1)
    if any(not 0 <= i < n or p[i] != 0 for i in I0):
        raise DomainError("I0 must index zero-coordinates of p")
    if any(not 0 <= i < n or p[i] != 1 for i in I1):
        raise DomainError("I1 must index one-coordinates of p")
    return PeripheralInterval(n, len(I1) - 1, n - len(I0) + 1)


def separation_exhaustive(n: int, p: Sequence[int], I0: Sequence[int], I1: Sequence[int]) -> SymmetricSet:
    """Scan {0,1}^n for the weights all of whose points are separated from ``p``."""
    I = sorted(set(I0) | set(I1))
    p = tuple(p)
    bad = set()
    for x in itertools.product((0, 1), repeat=n):
        if all(x[i] == p[i] for i in I):
            bad.add(sum(x))
    return SymmetricSet(n, tuple(w for w in range(n + 1) if w not in bad))


def complement_transform(S: SymmetricSet) -> SymmetricSet:
    """Image under x ↦ 1 - x (coordinatewise)."""
    return SymmetricSet(S.n, tuple(S.n - w for w in S.weights))
