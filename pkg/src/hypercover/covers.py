"""Hyperplane families, explicit cover constructions and exact cover verifiers.

Conventions: a (t, ell)-exact cover of a target set must vanish with
multiplicity at least t on the target and exactly ell everywhere else in
the cube. Block-exact covers additionally control every block restriction at
off-target points (see :func:`verify_cover`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .blockcore import (
    BlockStructure,
    BlockSymmetricSet,
    index_lattice,
    is_downward_closed,
    pdc_check,
    poset_extremes,
    prefix_set,
)
from .errors import DomainError
from .polyalg import (
    Hyperplane,
    HyperplaneFamily,
    Polynomial,
    multiplicity_at,
    product_of_affine,
)
from .symcore import (
    PointSet,
    SymmetricSet,
    canonical_weight_window,
    lambda_bar,
    lambda_measure,
    mu,
)

__all__ = [
    "CoverSpec",
    "VerificationReport",
    "Restriction",
    "family_Hprime",
    "family_Hstar",
    "family_Hcirc",
    "vanishing_family",
    "multiplicity_factor",
    "construct_symmetric_cover",
    "construct_grid_cover",
    "construct_pdc_polynomial_cover",
    "pdc_formula_innext",
    "pdc_formula_literal",
    "construct_grid_self_cover",
    "grid_self_cover_formula",
    "construct_hamming_ball_cover",
    "construct_layer_power_cover",
    "lift_subcube_cover",
    "restrict_subcube_cover",
    "verify_cover",
    "dominant_combination",
    "target_from_json",
    "witness_from_json",
]

Target = Union[PointSet, SymmetricSet, BlockSymmetricSet]


# ---------------------------------------------------------------- specs


@dataclass(frozen=True)
class CoverSpec:
    target: Target
    t: int
    ell: int = 0
    mode: str = "exact"
    sizes: tuple | None = None

    def __post_init__(self):
        if self.t < 1:
            raise DomainError("t must be at least 1")
        if not 0 <= self.ell <= self.t - 1:
            raise DomainError("ell must lie in [0, t-1]")
        if self.mode not in ("exact", "block-exact"):
            raise DomainError(f"unknown mode {self.mode!r}")
        sizes = self.sizes
        if sizes is None and isinstance(self.target, BlockSymmetricSet):
            sizes = self.target.structure.sizes
        if self.mode == "block-exact" and sizes is None:
            raise DomainError("block-exact specs need block sizes")
        if sizes is not None:
            sizes = tuple(int(s) for s in sizes)
            if sum(sizes) != self.n:
                raise DomainError("block sizes do not add up to the dimension")
        object.__setattr__(self, "sizes", sizes)
        if len(self.target_points()) == 2 ** self.n:
            raise DomainError("the target must be a proper subset of the cube")

    @property
    def n(self) -> int:
        if isinstance(self.target, BlockSymmetricSet):
            return self.target.structure.N
        return self.target.n

    @property
    def structure(self) -> BlockStructure | None:
        return BlockStructure(self.sizes) if self.sizes else None

    def target_points(self) -> frozenset:
        if isinstance(self.target, PointSet):
            return frozenset(self.target.points)
        return frozenset(self.target.points())

    def to_json(self) -> dict:
        d = {"target": self.target.to_json(), "t": self.t, "ell": self.ell, "mode": self.mode}
        if self.sizes is not None:
            d["sizes"] = list(self.sizes)
        return d

    @classmethod
    def from_json(cls, d: dict) -> CoverSpec:
        sizes = d.get("sizes")
        return cls(
            target_from_json(d["target"]),
            int(d["t"]),
            int(d.get("ell", 0)),
            d.get("mode", "exact"),
            tuple(sizes) if sizes is not None else None,
        )


def target_from_json(d: dict) -> Target:
    """Inverse of the ``to_json`` methods of the three target types."""
    if "tuples" in d:
        return BlockSymmetricSet(BlockStructure(tuple(d["sizes"])), frozenset(map(tuple, d["tuples"])))
    if "weights" in d:
        return SymmetricSet(int(d["n"]), tuple(d["weights"]))
    if "points" in d:
        return PointSet(int(d["n"]), tuple(map(tuple, d["points"])))
    raise DomainError("target JSON needs 'weights', 'points' or 'tuples'")


def witness_from_json(d: dict):
    if "hyperplanes" in d:
        return HyperplaneFamily.from_json(d)
    if "terms" in d:
        return Polynomial.from_json(d)
    raise DomainError("witness JSON needs 'hyperplanes' or 'terms'")


@dataclass
class VerificationReport:
    ok: bool
    kind: str
    measure: int
    checked: int
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "kind": self.kind,
            "measure": self.measure,
            "checked": self.checked,
            "violations": self.violations,
        }


# ---------------------------------------------------------------- families


def family_Hprime(n: int, W: Sequence[int]) -> HyperplaneFamily:
    """Layer planes sum(X) - w for each w in ``W``."""
    ws = sorted(set(W))
    for w in ws:
        if not 0 <= w <= n:
            raise DomainError(f"weight {w} outside [0,{n}]")
    return HyperplaneFamily(n, tuple(Hyperplane((1,) * n, -w) for w in ws))


def family_Hstar(n: int, i: int) -> HyperplaneFamily:
    """Planes H*_{(i,j)}, j = 1..i, covering exactly the weights [0,i-1] and [n-i+1,n]."""
    if not 0 <= i <= (n + 1) // 2:
        raise DomainError(f"index {i} outside [0,{(n + 1) // 2}]")
    hs = []
    for j in range(1, i + 1):
        cs = [0] * n
        for k in range(n - j):
            cs[k] = 1
        cs[n - j] = -(n - 2 * i + j)
        hs.append(Hyperplane(tuple(cs), -(i - j)))
    return HyperplaneFamily(n, tuple(hs))


def family_Hcirc(m: int, nvars: int = 1) -> HyperplaneFamily:
    """``m`` copies each of X_1 and X_1 - 1."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    e = (1,) + (0,) * (nvars - 1)
    return HyperplaneFamily(nvars, tuple(h for _ in range(m) for h in (Hyperplane(e, 0), Hyperplane(e, -1))))


def vanishing_family(T: SymmetricSet) -> HyperplaneFamily:
    """A family of size Lambda(T) whose cube zero set is exactly ``T``."""
    n = T.n
    if T.is_full:
        raise DomainError("no hyperplane family vanishes on the whole cube with this recipe")
    m = mu(T)
    window = set(canonical_weight_window(n, m).weights)
    rest = [w for w in T.weights if w not in window]
    return family_Hstar(n, m) + family_Hprime(n, rest)


def _complement_family(S: SymmetricSet) -> HyperplaneFamily:
    return vanishing_family(S.complement())


def _mixed_pair(structure: BlockStructure) -> list:
    # X_{1,1} - X_{2,1} and X_{1,1} + X_{2,1} - 1: every cube point lies on
    # exactly one, and both have nonzero coefficients in both blocks.
    N = structure.N
    a, b = structure.offsets()[0], structure.offsets()[1]
    c1 = [0] * N
    c1[a], c1[b] = 1, -1
    c2 = [0] * N
    c2[a], c2[b] = 1, 1
    return [Hyperplane(tuple(c1), 0), Hyperplane(tuple(c2), -1)]


def multiplicity_factor(structure: BlockStructure, m: int, variant: str = "blockwise") -> Polynomial:
    """A polynomial of degree 2m vanishing to order exactly m on the cube.

    ``"literal"`` gives (X_1(X_1 - 1))^m. ``"blockwise"`` gives
    (sum_j X_{j,1}(X_{j,1} - 1))^m, which keeps order exactly m in every block
    restriction too; the two agree when there is a single block.
    """
    N = structure.N
    if variant == "literal":
        x = Polynomial.variable(N, 0)
        return (x * (x - 1)) ** m
    if variant != "blockwise":
        raise DomainError(f"unknown multiplicity variant {variant!r}")
    r = Polynomial(N)
    for off in structure.offsets():
        x = Polynomial.variable(N, off)
        r = r + x * (x - 1)
    return r ** m


# ---------------------------------------------------------------- constructions


def construct_symmetric_cover(S: SymmetricSet, t: int) -> HyperplaneFamily:
    """Family of size Lambda-bar(S) + 2t - 2; a (t,t-1)-exact cover of the complement of S."""
    if S.is_empty:
        raise DomainError("S must be nonempty")
    if t < 1:
        raise DomainError("t must be at least 1")
    return _complement_family(S) + family_Hcirc(t - 1, S.n)


def construct_grid_cover(parts: Sequence[SymmetricSet], t: int, multiplicity: str = "blockwise") -> HyperplaneFamily:
    """Block-exact cover of the complement of the grid S_1 x ... x S_k.

    With ``multiplicity="blockwise"`` and two or more blocks the t-1 repeated
    pairs {X_1, X_1 - 1} are replaced by pairs mixing the first coordinates
    of blocks 1 and 2, which cannot collapse in a block restriction. With
    three or more blocks no such pair exists, so the literal pairs are used
    and the result is only an exact (not block-exact) cover when t >= 2.
    """
    if not parts or any(p.is_empty for p in parts):
        raise DomainError("every block of the grid must be nonempty")
    if t < 1:
        raise DomainError("t must be at least 1")
    st = BlockStructure(tuple(p.n for p in parts))
    fam = HyperplaneFamily(st.N)
    for p, off in zip(parts, st.offsets()):
        fam = fam + _complement_family(p).embed(st.N, off)
    if multiplicity == "blockwise" and st.k == 2:
        extra = HyperplaneFamily(st.N, tuple(_mixed_pair(st) * (t - 1)))
    elif multiplicity in ("blockwise", "literal"):
        extra = family_Hcirc(t - 1, st.N)
    else:
        raise DomainError(f"unknown multiplicity variant {multiplicity!r}")
    return fam + extra


def dominant_combination(polys: Sequence[Polynomial], nonzero_at: Sequence, start: int = 2, rounds: int = 64):
    """Combine ``polys`` with scalars 1, M, M^2, ... so that the sum is nonzero
    at every point of ``nonzero_at``. M starts at ``start`` and doubles.

    Returns ``(polynomial, M)``. Each point rules out finitely many M when some
    summand is nonzero there, so the loop ends; points where every summand
    vanishes make it fail, which is reported as a DomainError.
    """
    values = [[P.evaluate(x) for P in polys] for x in nonzero_at]
    for row, x in zip(values, nonzero_at):
        if not any(row):
            raise DomainError(f"every summand vanishes at {x}")
    M = start
    for _ in range(rounds):
        if all(sum(v * M ** i for i, v in enumerate(row)) != 0 for row in values):
            out = Polynomial(polys[0].nvars)
            for i, P in enumerate(polys):
                out = out + P * (M ** i)
            return out, M
        M *= 2
    raise DomainError("no dominant scalar found")  # pragma: no cover


def _require_pdc_order(S: BlockSymmetricSet, order):
    if order is None:
        res = pdc_check(S)
        if res is None:
            raise DomainError("set is not PDC under any order choice")
        order = res.order
    lat, _ = index_lattice(S, order)
    if not is_downward_closed(lat.members):
        raise DomainError(f"set is not PDC under order {tuple(order)}")
    return tuple(order), lat


def pdc_formula_innext(S: BlockSymmetricSet, t: int, order=None) -> int:
    """max over maximal lattice elements z of sum_j Lambda-bar([S]_{j,z_j}), plus 2t - 2."""
    order, lat = _require_pdc_order(S, order)
    innext, _ = poset_extremes(lat.members, lat.q)
    best = max(
        sum(lambda_bar(prefix_set(S, order, j, z[j])) for j in range(S.k)) for z in innext
    )
    return best + 2 * t - 2


def pdc_formula_literal(S: BlockSymmetricSet, t: int, order=None) -> int:
    """The printed outext formula: max over minimal non-members z of
    sum over z_j >= 1 of Lambda-bar([S]_{j,z_j - 1}), plus 2t - 2."""
    order, lat = _require_pdc_order(S, order)
    _, outext = poset_extremes(lat.members, lat.q)
    best = max(
        sum(lambda_bar(prefix_set(S, order, j, z[j] - 1)) for j in range(S.k) if z[j] >= 1)
        for z in outext
    )
    return best + 2 * t - 2


def _box_polynomial(S, order, z, st, shift=0):
    P = Polynomial.constant(st.N, 1)
    for j, off in enumerate(st.offsets()):
        if z[j] - shift < 0:
            continue
        pre = prefix_set(S, order, j, z[j] - shift)
        P = P * product_of_affine(_complement_family(pre).embed(st.N, off))
    return P


def construct_pdc_polynomial_cover(S: BlockSymmetricSet, t: int, order=None, variant: str = "innext"):
    """Block-exact (t, t-1) polynomial cover of the complement of a PDC set.

    ``"innext"`` sums, over the maximal index tuples z, products vanishing off
    the box prod_j [S]_{j,z_j}; the boxes cover S, so the sum vanishes on the
    complement and generic scalars keep it nonzero on S. The result is
    verified before it is returned.

    ``"literal-outext"`` builds the printed recipe (sum over outext with
    shifted prefixes and the X_1-only multiplicity factor) and returns
    ``(polynomial, report)`` without insisting that it verifies.
    """
    if S.is_empty:
        raise DomainError("S must be nonempty")
    if t < 1:
        raise DomainError("t must be at least 1")
    order, lat = _require_pdc_order(S, order)
    st = S.structure
    innext, outext = poset_extremes(lat.members, lat.q)
    spec = CoverSpec(S.complement(), t, t - 1, "block-exact", st.sizes)
    on_S = S.points()
    if variant == "innext":
        terms = [_box_polynomial(S, order, z, st) for z in sorted(innext)]
        Q, _ = dominant_combination(terms, on_S)
        P = Q * multiplicity_factor(st, t - 1, "blockwise")
        rep = verify_cover(P, spec)
        if not rep.ok:  # pragma: no cover - would indicate a bug
            raise RuntimeError(f"innext construction failed verification: {rep.violations[:3]}")
        return P
    if variant == "literal-outext":
        terms = [_box_polynomial(S, order, z, st, shift=1) for z in sorted(outext)]
        try:
            Q, _ = dominant_combination(terms, on_S)
        except DomainError:
            Q = Polynomial(st.N)
            for i, T in enumerate(terms):
                Q = Q + T * (2 ** i)
        P = Q * multiplicity_factor(st, t - 1, "literal")
        return P, verify_cover(P, spec)
    raise DomainError(f"unknown variant {variant!r}")


def grid_self_cover_formula(parts: Sequence[SymmetricSet], t: int) -> int:
    """max Lambda(S_j) over the blocks that are not the full cube, plus 2t - 2."""
    nonfull = [p for p in parts if not p.is_full]
    if not nonfull:
        raise DomainError("the grid must be a proper subset of the cube")
    return max(lambda_measure(p) for p in nonfull) + 2 * t - 2


def construct_grid_self_cover(parts: Sequence[SymmetricSet], t: int) -> Polynomial:
    """Block-exact (t, t-1) polynomial cover of the grid S_1 x ... x S_k itself.

    Sum over non-full blocks of scalar multiples of a block polynomial that
    vanishes exactly on S_j, times the blockwise multiplicity factor.
    """
    if not parts or any(p.is_empty for p in parts):
        raise DomainError("every block of the grid must be nonempty")
    if all(p.is_full for p in parts):
        raise DomainError("the grid must be a proper subset of the cube")
    if t < 1:
        raise DomainError("t must be at least 1")
    st = BlockStructure(tuple(p.n for p in parts))
    terms = []
    for p, off in zip(parts, st.offsets()):
        if p.is_full:
            continue
        terms.append(product_of_affine(vanishing_family(p).embed(st.N, off)))
    grid = BlockSymmetricSet.grid(parts)
    Q, _ = dominant_combination(terms, grid.complement().points())
    P = Q * multiplicity_factor(st, t - 1, "blockwise")
    rep = verify_cover(P, CoverSpec(grid, t, t - 1, "block-exact", st.sizes))
    if not rep.ok:  # pragma: no cover
        raise RuntimeError(f"grid self-cover failed verification: {rep.violations[:3]}")
    return P


def construct_hamming_ball_cover(n: int, w: int, t: int, base: Polynomial) -> Polynomial:
    """Symmetrize a (t,0)-exact cover of {0,1}^w minus 1^w over all w-subsets
    of coordinates; the result covers the weights [0, w-1] in {0,1}^n."""
    if not 1 <= w <= n - 1:
        raise DomainError(f"w must lie in [1,{n - 1}]")
    if not 2 <= t <= (n + 3) // 2:
        raise DomainError(f"t must lie in [2,{(n + 3) // 2}]")
    if base.nvars != w:
        raise DomainError("base polynomial must have w variables")
    cube = set(itertools.product((0, 1), repeat=w))
    rep = verify_cover(base, CoverSpec(PointSet(w, tuple(cube - {(1,) * w})), t, 0))
    if not rep.ok:
        raise DomainError("base polynomial is not a (t,0)-exact cover of the punctured cube")
    out = Polynomial(n)
    for combo in itertools.combinations(range(n), w):
        out = out + base.embed(n, combo)
    return out


def construct_layer_power_cover(n: int, w: int, t: int) -> Polynomial:
    """(X_1 + ... + X_n - w)^t."""
    if not 0 <= w <= n:
        raise DomainError(f"weight {w} outside [0,{n}]")
    if t < 1:
        raise DomainError("t must be at least 1")
    return Polynomial.affine((1,) * n, -w) ** t


class Restriction(NamedTuple):
    family: HyperplaneFamily | None
    collapsed: tuple


def lift_subcube_cover(F: HyperplaneFamily, m: int) -> HyperplaneFamily:
    """View a family on the last n - m coordinates as a family on n coordinates."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    return F.embed(F.nvars + m, m)


def restrict_subcube_cover(F: HyperplaneFamily, m: int) -> Restriction:
    """Substitute 0 for the first ``m`` coordinates.

    Members whose remaining linear part vanishes are reported in
    ``collapsed`` and the family is then ``None``.
    """
    if not 0 <= m < F.nvars:
        raise DomainError(f"m must lie in [0,{F.nvars - 1}]")
    out, bad = [], []
    for idx, h in enumerate(F):
        cs = h.coeffs[m:]
        if not any(cs):
            bad.append(idx)
        else:
            out.append(Hyperplane(cs, h.constant))
    if bad:
        return Restriction(None, tuple(bad))
    return Restriction(HyperplaneFamily(F.nvars - m, tuple(out)), ())


# ---------------------------------------------------------------- verifier


def _cube(n):
    return itertools.product((0, 1), repeat=n)


def verify_cover(witness, spec: CoverSpec) -> VerificationReport:
    """Exhaustive exact check of a hyperplane family or polynomial against ``spec``.

    Families: incidence >= t on the target and == ell elsewhere. In
    block-exact mode a member vanishing at an off-target point must keep a
    nonzero coefficient in every block, otherwise its restriction to that
    block slice is identically zero.

    Polynomials: multiplicity >= t on the target; off the target the
    multiplicity is exactly ell, or in block-exact mode the multiplicity of
    every block restriction is exactly ell.
    """
    n = spec.n
    target = spec.target_points()
    violations = []
    st = spec.structure
    blocks = [st.block_vars(j) for j in range(st.k)] if st else []
    if isinstance(witness, HyperplaneFamily):
        kind = "hyperplanes"
        if witness.nvars != n:
            raise DomainError("witness dimension differs from the target dimension")
        measure = len(witness)
        for x in _cube(n):
            zero = [h for h in witness if h.evaluate(x) == 0]
            c = len(zero)
            if x in target:
                if c < spec.t:
                    violations.append({"point": list(x), "reason": f"incidence {c} < {spec.t}"})
            else:
                if c != spec.ell:
                    violations.append({"point": list(x), "reason": f"incidence {c} != {spec.ell}"})
                if spec.mode == "block-exact":
                    for h in zero:
                        for j, bv in enumerate(blocks):
                            if not any(h.coeffs[i] for i in bv):
                                violations.append(
                                    {"point": list(x), "reason": f"member collapses in block {j}"}
                                )
    elif isinstance(witness, Polynomial):
        kind = "polynomial"
        if witness.nvars != n:
            raise DomainError("witness dimension differs from the target dimension")
        measure = witness.degree
        if witness.is_zero():
            return VerificationReport(False, kind, -1, 0, [{"point": None, "reason": "zero polynomial"}])
        for x in _cube(n):
            if x in target:
                m = multiplicity_at(witness, x, spec.t)
                if m < spec.t:
                    violations.append({"point": list(x), "reason": f"multiplicity {m} < {spec.t}"})
            elif spec.mode == "exact":
                m = multiplicity_at(witness, x, spec.ell + 1)
                if m != spec.ell:
                    violations.append({"point": list(x), "reason": f"multiplicity {m} != {spec.ell}"})
            else:
                for j, bv in enumerate(blocks):
                    m = multiplicity_at(witness, x, spec.ell + 1, support=bv)
                    if m != spec.ell:
                        violations.append(
                            {"point": list(x), "reason": f"block {j} multiplicity {m} != {spec.ell}"}
                        )
    else:
        raise DomainError(f"cannot verify a {type(witness).__name__}")
    return VerificationReport(not violations, kind, measure, 2 ** n, violations)
