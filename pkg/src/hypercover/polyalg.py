"""Sparse exact polynomials over the rationals, and affine hyperplanes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Sequence

from .errors import DomainError

__all__ = [
    "Polynomial",
    "Hyperplane",
    "HyperplaneFamily",
    "exponents_of_order",
    "derivative",
    "multiplicity_at",
    "taylor_shift",
    "product_of_affine",
    "fraction_str",
    "parse_fraction",
]


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s))


def _falling(b: int, a: int) -> int:
    out = 1
    for k in range(a):
        out *= b - k
    return out


def exponents_of_order(nvars: int, order: int, support: Sequence[int] | None = None):
    """All exponent vectors of total degree ``order`` supported on ``support``.

    Yielded in lexicographically decreasing order of the supported part.
    """
    idx = list(range(nvars)) if support is None else sorted(support)
    m = len(idx)
    if m == 0:
        if order == 0:
            yield (0,) * nvars
        return
    for bars in itertools.combinations(range(order + m - 1), m - 1):
        parts = []
        prev = -1
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(order + m - 2 - prev)
        alpha = [0] * nvars
        for i, p in zip(idx, parts):
            alpha[i] = p
        yield tuple(alpha)


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = int(nvars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != self.nvars or any(v < 0 for v in e):
                raise DomainError(f"bad exponent vector {e} for {self.nvars} variables")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c=1) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> Polynomial:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def affine(cls, coeffs: Sequence, constant=0) -> Polynomial:
        n = len(coeffs)
        terms = {(0,) * n: constant}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.nvars}, {len(self.terms)} terms, deg {self.degree})"

    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        if other.nvars != self.nvars:
            raise DomainError("variable count mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DomainError("point dimension mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
                    if not v:
                        break
            total += v
        return total

    def derivative_at(self, alpha: Sequence[int], point: Sequence) -> Fraction:
        """Value of the partial derivative of order ``alpha`` at ``point``."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for b, a, x in zip(e, alpha, point):
                if b < a:
                    v = 0
                    break
                if a:
                    v *= _falling(b, a)
                if b > a:
                    v *= Fraction(x) ** (b - a)
                if not v:
                    break
            if v:
                total += v
        return total

    def substitute(self, values: dict) -> Polynomial:
        """Fix variables ``i -> values[i]``; variable count is unchanged."""
        terms = {}
        for e, c in self.terms.items():
            v = Fraction(c)
            e2 = list(e)
            for i, x in values.items():
                if e2[i]:
                    v *= Fraction(x) ** e2[i]
                    e2[i] = 0
            if v:
                e2 = tuple(e2)
                terms[e2] = terms.get(e2, 0) + v
        return Polynomial(self.nvars, terms)

    def embed(self, nvars: int, positions: Sequence[int]) -> Polynomial:
        """Rename variable ``i`` to ``positions[i]`` inside ``nvars`` variables."""
        if len(positions) != self.nvars:
            raise DomainError("positions must list one slot per variable")
        terms = {}
        for e, c in self.terms.items():
            e2 = [0] * nvars
            for i, k in zip(positions, e):
                e2[i] += k
            terms[tuple(e2)] = terms.get(tuple(e2), 0) + c
        return Polynomial(nvars, terms)

    def drop_vars(self, keep: Sequence[int]) -> Polynomial:
        """Project onto the variables ``keep``; other exponents must be zero."""
        keep = list(keep)
        terms = {}
        for e, c in self.terms.items():
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise DomainError("polynomial depends on a dropped variable")
            terms[tuple(e[i] for i in keep)] = c
        return Polynomial(len(keep), terms)

    def content_normalized(self) -> Polynomial:
        """Scale to coprime integer coefficients with positive leading term."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * den))
        lead = max(self.terms)
        s = Fraction(den, g)
        if self.terms[lead] < 0:
            s = -s
        return self * s

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exps": list(e), "coef": fraction_str(c)}
                for e, c in sorted(self.terms.items(), reverse=True)
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> Polynomial:
        return cls(d["nvars"], {tuple(t["exps"]): parse_fraction(t["coef"]) for t in d["terms"]})


def derivative(P: Polynomial, alpha: Sequence[int]) -> Polynomial:
    if len(alpha) != P.nvars:
        raise DomainError(f"order vector has length {len(alpha)}, expected {P.nvars}")
    terms = {}
    for e, c in P.terms.items():
        if all(b >= a for b, a in zip(e, alpha)):
            k = c
            for b, a in zip(e, alpha):
                k *= _falling(b, a)
            terms[tuple(b - a for b, a in zip(e, alpha))] = k
    return Polynomial(P.nvars, terms)


def multiplicity_at(P: Polynomial, a: Sequence, cap: int, support: Sequence[int] | None = None) -> int:
    """Order of vanishing of ``P`` at ``a``, truncated at ``cap``.

    With ``support`` only derivatives in those variables are considered, which
    is the multiplicity of the restriction of ``P`` to the affine slice through
    ``a`` spanned by those coordinates.
    """
    if P.is_zero():
        raise DomainError("multiplicity of the zero polynomial is undefined")
    if len(a) != P.nvars:
        raise DomainError("point dimension mismatch")
    for k in range(cap):
        for alpha in exponents_of_order(P.nvars, k, support):
            if P.derivative_at(alpha, a):
                return k
    return cap


def taylor_shift(P: Polynomial, a: Sequence) -> Polynomial:
    """Coefficients of ``P`` in the shifted variables Y = X - a."""
    a = [Fraction(x) for x in a]
    if len(a) != P.nvars:
        raise DomainError("point dimension mismatch")
    terms = {}
    for e, c in P.terms.items():
        # expand prod (Y_i + a_i)^{e_i}
        factors = []
        for b, x in zip(e, a):
            factors.append([(k, comb(b, k) * x ** (b - k)) for k in range(b + 1) if x or k == b])
        for combo in itertools.product(*factors):
            v = c
            for _, f in combo:
                v *= f
            if v:
                key = tuple(k for k, _ in combo)
                terms[key] = terms.get(key, 0) + v
    return Polynomial(P.nvars, terms)


@dataclass(frozen=True)
class Hyperplane:
    """The affine form c_1 X_1 + ... + c_n X_n + c_0."""

    coeffs: tuple
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not any(cs):
            raise DomainError("a hyperplane needs a nonzero linear part")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "constant", Fraction(self.constant))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def evaluate(self, x: Sequence) -> Fraction:
        return sum((c * Fraction(v) for c, v in zip(self.coeffs, x)), self.constant)

    def as_polynomial(self) -> Polynomial:
        return Polynomial.affine(self.coeffs, self.constant)

    def embed(self, nvars: int, offset: int) -> Hyperplane:
        cs = [0] * nvars
        for i, c in enumerate(self.coeffs):
            cs[offset + i] = c
        return Hyperplane(tuple(cs), self.constant)

    def to_json(self) -> dict:
        return {"coeffs": [fraction_str(c) for c in self.coeffs], "constant": fraction_str(self.constant)}

    @classmethod
    def from_json(cls, d: dict) -> Hyperplane:
        return cls(tuple(parse_fraction(c) for c in d["coeffs"]), parse_fraction(d["constant"]))


@dataclass(frozen=True)
class HyperplaneFamily:
    """A multiset of hyperplanes; ``len`` counts repetitions."""

    nvars: int
    items: tuple = ()

    def __post_init__(self):
        items = tuple(self.items)
        for h in items:
            if h.nvars != self.nvars:
                raise DomainError("hyperplane dimension mismatch in family")
        object.__setattr__(self, "items", items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __add__(self, other: HyperplaneFamily) -> HyperplaneFamily:
        if other.nvars != self.nvars:
            raise DomainError("family dimension mismatch")
        return HyperplaneFamily(self.nvars, self.items + other.items)

    def embed(self, nvars: int, offset: int) -> HyperplaneFamily:
        return HyperplaneFamily(nvars, tuple(h.embed(nvars, offset) for h in self.items))

    def incidence(self, x: Sequence) -> int:
        return sum(1 for h in self.items if h.evaluate(x) == 0)

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "hyperplanes": [h.to_json() for h in self.items]}

    @classmethod
    def from_json(cls, d: dict) -> HyperplaneFamily:
        hs = tuple(Hyperplane.from_json(h) for h in d["hyperplanes"])
        nvars = d.get("nvars", hs[0].nvars if hs else 0)
        return cls(nvars, hs)


def product_of_affine(family: HyperplaneFamily) -> Polynomial:
    """Expanded product of the family's affine forms; the empty product is 1."""
    out = Polynomial.constant(family.nvars, 1)
    for h in family:
        out = out * h.as_polynomial()
    return out


def from_iterable(nvars: int, hs: Iterable[Hyperplane]) -> HyperplaneFamily:
    return HyperplaneFamily(nvars, tuple(hs))
