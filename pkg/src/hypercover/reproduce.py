"""Certificates and the small-parameter sweeps that produce them.

A certificate records one instance of a claimed identity: the closed-form
value, an explicit witness that is verified exhaustively, and (when the
instance is small enough) the value found by a brute-force oracle. Every
certificate embeds its full witness, so :func:`check_certificate` can
re-verify it from the JSON alone.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .blockcore import (
    BlockStructure,
    BlockSymmetricSet,
    block_index_complexity,
    index_lattice,
    is_downward_closed,
    outer_intact_check,
    pdc_check,
)
from .covers import (
    CoverSpec,
    construct_grid_cover,
    construct_hamming_ball_cover,
    construct_layer_power_cover,
    construct_pdc_polynomial_cover,
    construct_symmetric_cover,
    lift_subcube_cover,
    pdc_formula_innext,
    pdc_formula_literal,
    restrict_subcube_cover,
    target_from_json,
    vanishing_family,
    verify_cover,
    witness_from_json,
)
from .errors import BoundExceeded, DomainError
from .oracles import bepc_oracle, ehc_oracle, epc_oracle
from .polyalg import Hyperplane, HyperplaneFamily
from .symcore import (
    PointSet,
    SymmetricSet,
    index_complexity_bruteforce,
    index_complexity_symmetric,
    inn_measure,
    is_peripheral,
    lambda_bar,
    lambda_measure,
    out_measure,
)

__all__ = [
    "Certificate",
    "SUITES",
    "QUARANTINED",
    "reproduce",
    "emit_report",
    "check_certificate",
    "dumps",
]

CONFIRMED, DISCREPANCY, SKIPPED = "confirmed", "discrepancy", "oracle-skipped"
QUARANTINED = frozenset({"pdc-discrepancy"})


@dataclass
class Certificate:
    suite: str
    claim: str
    instance: dict
    formula_value: int
    oracle_value: int | None
    witness: dict
    checks: list = field(default_factory=list)
    status: str = CONFIRMED
    oracle: str | None = None
    relation: str = "eq"

    def sort_key(self):
        return (
            self.suite,
            self.instance.get("n", 0),
            self.instance.get("t", 0),
            json.dumps(self.instance, sort_keys=True),
            self.oracle or "",
        )

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "claim": self.claim,
            "instance": self.instance,
            "formula_value": self.formula_value,
            "oracle": self.oracle,
            "oracle_value": self.oracle_value,
            "relation": self.relation,
            "witness": self.witness,
            "checks": self.checks,
            "status": self.status,
        }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------- helpers


def _relation_holds(relation, oracle_value, formula_value):
    if relation == "gt":
        return oracle_value > formula_value
    return oracle_value == formula_value


def _finish(cert: Certificate, skipped=False) -> Certificate:
    ok = all(c["ok"] for c in cert.checks)
    if not ok:
        cert.status = DISCREPANCY
    elif cert.oracle_value is not None:
        holds = _relation_holds(cert.relation, cert.oracle_value, cert.formula_value)
        cert.status = CONFIRMED if holds else DISCREPANCY
    else:
        cert.status = SKIPPED if skipped else CONFIRMED
    return cert


def _witness_json(w) -> dict:
    if isinstance(w, HyperplaneFamily):
        return {"type": "hyperplanes", "measure": len(w), **w.to_json()}
    return {"type": "polynomial", "measure": w.degree, **w.to_json()}


def _run_oracle(kind, spec, limits):
    fn = {"epc": epc_oracle, "bepc": bepc_oracle, "ehc": ehc_oracle}[kind]
    bound = limits.get("ehc_max_n", 4) if kind == "ehc" else 5
    if spec.n > bound:
        return None
    return fn(spec, max_n=bound)


def _cover_cert(suite, claim, spec, formula, witness, oracle=None, limits=None,
                relation="eq", extra=None, measure_is_formula=True) -> Certificate:
    """Verify ``witness`` against ``spec`` and optionally run one oracle."""
    limits = limits or {}
    rep = verify_cover(witness, spec)
    checks = [{"name": "witness-verifies", "ok": rep.ok, "violations": len(rep.violations)}]
    if measure_is_formula:
        checks.append({"name": "witness-measure", "ok": rep.measure == formula, "value": rep.measure})
    instance = {"n": spec.n, "t": spec.t, "ell": spec.ell, "spec": spec.to_json()}
    if extra:
        instance.update(extra)
    cert = Certificate(suite, claim, instance, formula, None, _witness_json(witness), checks,
                       oracle=oracle, relation=relation)
    skipped = False
    if oracle is not None:
        try:
            res = _run_oracle(oracle, spec, limits)
        except BoundExceeded:
            res = None
        if res is None:
            skipped = True
        else:
            cert.oracle_value = res.value
            cert.checks.append(
                {"name": f"{oracle}-oracle-witness", "ok": verify_cover(res.witness, spec).ok}
            )
    return _finish(cert, skipped)


def _oracle_cert(suite, claim, spec, formula, oracle, limits, relation="eq", extra=None):
    """Certificate whose witness is the oracle's own optimum."""
    res = _run_oracle(oracle, spec, limits)
    if res is None:
        instance = {"n": spec.n, "t": spec.t, "ell": spec.ell, "spec": spec.to_json()}
        cert = Certificate(suite, claim, instance, formula, None, {"type": "none"}, [], oracle=oracle,
                           relation=relation)
        return _finish(cert, skipped=True)
    cert = _cover_cert(suite, claim, spec, formula, res.witness, None, limits, relation, extra,
                       measure_is_formula=False)
    cert.oracle = oracle
    cert.oracle_value = res.value
    cert.instance["transcript"] = res.transcript
    return _finish(cert)


def _weight_sets(n, nonempty=True, proper=False):
    for r in range(1 if nonempty else 0, n + 2):
        for ws in itertools.combinations(range(n + 1), r):
            if proper and r == n + 1:
                continue
            yield SymmetricSet(n, ws)


def _cube(n):
    return list(itertools.product((0, 1), repeat=n))


def _lim(limits, key, default):
    v = limits.get(key)
    return default if v is None else v


# ---------------------------------------------------------------- suites


def suite_alon_furedi(limits):
    out = []
    for n in range(1, _lim(limits, "max_n", 4) + 1):
        for a in _cube(n):
            target = PointSet(n, tuple(x for x in _cube(n) if x != a))
            spec = CoverSpec(target, 1, 0)
            fam = HyperplaneFamily(
                n, tuple(Hyperplane(tuple(int(i == j) for j in range(n)), -(1 - a[i])) for i in range(n))
            )
            for kind in ("epc", "ehc"):
                out.append(_cover_cert("alon-furedi", "punctured-cube", spec, n, fam, kind, limits,
                                       extra={"a": list(a)}))
    return out


def suite_sauermann_wigderson(limits):
    out = []
    for n in range(1, _lim(limits, "max_n", 4) + 1):
        target = SymmetricSet(n, tuple(range(1, n + 1)))
        for t in range(1, _lim(limits, "max_t", 3) + 1):
            for ell in range(t):
                spec = CoverSpec(target, t, ell)
                if ell == t - 1:
                    fam = construct_symmetric_cover(SymmetricSet(n, (0,)), t)
                    out.append(_cover_cert("sauermann-wigderson", "punctured-cube-top", spec,
                                           n + 2 * t - 2, fam, "epc", limits))
                elif t - 1 <= (n + 1) // 2:
                    out.append(_oracle_cert("sauermann-wigderson", "punctured-cube-low", spec,
                                            n + 2 * t - 3, "epc", limits))
    return out


def suite_clifton_huang_small(limits):
    out = []
    for n, t in ((2, 2), (3, 2), (2, 3)):
        spec = CoverSpec(SymmetricSet(n, tuple(range(1, n + 1))), t, 0)
        out.append(_oracle_cert("clifton-huang-small", "punctured-cube-hyperplanes", spec,
                                n + t * (t - 1) // 2, "ehc", {**limits, "ehc_max_n": 4}))
    return out


def suite_symmetric_multiplicity_one(limits):
    out = []
    for n in range(1, _lim(limits, "max_n", 4) + 1):
        for S in _weight_sets(n, nonempty=False, proper=True):
            spec = CoverSpec(S, 1, 0)
            fam = vanishing_family(S)
            out.append(_cover_cert("symmetric-multiplicity-one", "symmetric-multiplicity-one", spec, lambda_measure(S),
                                   fam, "epc", limits))
    return out


def suite_layer_complement(limits):
    out = []
    for n in range(1, _lim(limits, "max_n", 4) + 1):
        for w in range(n + 1):
            layer = SymmetricSet.layer(n, w)
            for t in range(1, _lim(limits, "max_t", 2) + 1):
                spec = CoverSpec(layer.complement(), t, t - 1)
                fam = construct_symmetric_cover(layer, t)
                formula = max(w, n - w) + 2 * t - 2
                for kind in ("epc", "ehc"):
                    out.append(_cover_cert("layer-complement", "layer-complement", spec, formula, fam,
                                           kind, limits, extra={"w": w}))
    return out


def _inner_outer_sweep(n):
    exceptions = []
    count = 0
    for S in _weight_sets(n):
        count += 1
        total = inn_measure(S.complement()) + out_measure(S)
        tight = is_peripheral(S) or is_peripheral(S.complement())
        if total < n or (total == n) != tight:
            exceptions.append({"weights": list(S.weights), "sum": total})
    return count, exceptions


def suite_inner_outer(limits):
    out = []
    for n in range(1, _lim(limits, "max_n", 10) + 1):
        count, exc = _inner_outer_sweep(n)
        cert = Certificate(
            "inner-outer", "inner-outer-sum", {"n": n, "sets": count}, 0, len(exc),
            {"type": "exhaustive", "measure": count, "exceptions": exc},
            [{"name": "sweep", "ok": not exc, "sets": count}], oracle="sweep",
        )
        out.append(_finish(cert))
    return out


def _separates(points, p, coords) -> bool:
    if p not in points:
        return False
    return all(any(q[i] != p[i] for i in coords) for q in points if q != p)


def _index_cert(suite, claim, target, formula, bf, extra=None):
    pts = set(target.points) if isinstance(target, PointSet) else set(target.points())
    w = {"type": "index", "measure": len(bf.coords), "point": list(bf.point), "coords": list(bf.coords)}
    checks = [{"name": "witness-separates", "ok": _separates(pts, bf.point, bf.coords)},
              {"name": "witness-measure", "ok": len(bf.coords) == bf.value, "value": len(bf.coords)}]
    instance = {"n": target.n if hasattr(target, "n") else target.structure.N, "set": target.to_json()}
    if extra:
        instance.update(extra)
    return _finish(Certificate(suite, claim, instance, formula, bf.value, w, checks, oracle="bruteforce"))


def suite_index_symmetric(limits):
    out = []
    for n in range(1, _lim(limits, "max_n", 5) + 1):
        for S in _weight_sets(n):
            bf = index_complexity_bruteforce(S.to_pointset())
            iw = index_complexity_symmetric(S)
            cert = _index_cert("index-symmetric", "symmetric-index", S, out_measure(S), bf)
            cert.checks.append({"name": "outer-witness-separates",
                                "ok": _separates(set(S.points()), iw.point, iw.coords)})
            out.append(_finish(cert))
    return out


def suite_multiplicity_symmetric(limits):
    out = []
    for n in range(1, _lim(limits, "max_n", 4) + 1):
        for S in _weight_sets(n):
            for t in range(1, _lim(limits, "max_t", 2) + 1):
                spec = CoverSpec(S.complement(), t, t - 1)
                fam = construct_symmetric_cover(S, t)
                formula = lambda_bar(S) + 2 * t - 2
                for kind in ("epc", "ehc"):
                    out.append(_cover_cert("multiplicity-symmetric", "symmetric-complement", spec,
                                           formula, fam, kind, limits))
    return out


def _block_sizes(max_N, max_part=None):
    for N in range(2, max_N + 1):
        for n1 in range(1, N):
            n2 = N - n1
            if max_part is None or max(n1, n2) <= max_part:
                yield (n1, n2)


def suite_multiplicity_block(limits):
    out = []
    for sizes in _block_sizes(_lim(limits, "max_n", 4)):
        for S1 in _weight_sets(sizes[0]):
            for S2 in _weight_sets(sizes[1]):
                grid = BlockSymmetricSet.grid([S1, S2])
                for t in range(1, _lim(limits, "max_t", 2) + 1):
                    spec = CoverSpec(grid.complement(), t, t - 1, "block-exact", sizes)
                    fam = construct_grid_cover([S1, S2], t)
                    formula = lambda_bar(S1) + lambda_bar(S2) + 2 * t - 2
                    out.append(_cover_cert("multiplicity-block", "grid-complement", spec, formula, fam,
                                           "bepc", limits, extra={"sizes": list(sizes)}))
    return out


def suite_subcube(limits):
    out = []
    ehc_n = _lim(limits, "ehc_max_n", 3)
    for n2 in range(1, _lim(limits, "max_n", 3) + 1):
        for m in range(1, 3):
            n = n2 + m
            for S in _weight_sets(n2, nonempty=False, proper=True):
                for t in range(1, _lim(limits, "max_t", 2) + 1):
                    small = CoverSpec(S, t, t - 1)
                    base = construct_symmetric_cover(S.complement(), t)
                    lifted = lift_subcube_cover(base, m)
                    big_target = PointSet(n, tuple(x + y for x in _cube(m) for y in S.points()))
                    spec = CoverSpec(big_target, t, t - 1)
                    back = restrict_subcube_cover(lifted, m)
                    formula = lambda_measure(S) + 2 * t - 2
                    cert = _cover_cert("subcube", "subcube-product", spec, formula, lifted,
                                       "ehc" if n <= ehc_n else None, limits,
                                       extra={"m": m, "inner": small.to_json()})
                    cert.checks.append({"name": "base-verifies", "ok": verify_cover(base, small).ok})
                    ok = back.family is not None and verify_cover(back.family, small).ok \
                        and len(back.family) == len(base)
                    cert.checks.append({"name": "restriction-round-trip", "ok": ok})
                    out.append(_finish(cert, skipped=n > ehc_n))
    return out


def _pdc_instances(max_N, max_part=None):
    """All nonempty 2-block symmetric sets that are PDC, in a canonical order."""
    for sizes in _block_sizes(max_N, max_part):
        st = BlockStructure(sizes)
        tuples = st.all_tuples()
        for mask in range(1, 1 << len(tuples)):
            S = BlockSymmetricSet(st, frozenset(tp for i, tp in enumerate(tuples) if mask >> i & 1))
            res = pdc_check(S)
            if res is not None:
                yield S, res


def suite_pdc(limits):
    out = []
    for S, res in _pdc_instances(_lim(limits, "max_n", 4)):
        for t in range(1, _lim(limits, "max_t", 1) + 1):
            sizes = S.structure.sizes
            spec = CoverSpec(S.complement(), t, t - 1, "block-exact", sizes)
            P = construct_pdc_polynomial_cover(S, t, res.order, "innext")
            formula = pdc_formula_innext(S, t, res.order)
            out.append(_cover_cert("pdc", "pdc-complement-innext", spec, formula, P, "bepc", limits,
                                   extra={"order": list(res.order), "sizes": list(sizes)}))
    return out


def suite_pdc_discrepancy(limits):
    out = []
    for S, res in _pdc_instances(_lim(limits, "max_n", 4)):
        for t in range(1, _lim(limits, "max_t", 1) + 1):
            sizes = S.structure.sizes
            spec = CoverSpec(S.complement(), t, t - 1, "block-exact", sizes)
            P, _ = construct_pdc_polynomial_cover(S, t, res.order, "literal-outext")
            literal = pdc_formula_literal(S, t, res.order)
            innext = pdc_formula_innext(S, t, res.order)
            cert = _cover_cert("pdc-discrepancy", "pdc-complement-literal", spec, literal, P, "bepc",
                               limits, extra={"order": list(res.order), "sizes": list(sizes),
                                              "formula_innext": innext})
            out.append(cert)
    return out


def _hamming_valid(n, w, t):
    # the base case needs t - 1 <= floor((w + 1) / 2); see the notes on this range
    return 1 <= w <= n - 1 and 2 <= t <= (n + 3) // 2 and t - 1 <= (w + 1) // 2


def suite_hamming_ball(limits):
    out = []
    for n in range(2, _lim(limits, "max_n", 4) + 1):
        for w in range(1, n):
            for t in range(2, _lim(limits, "max_t", 3) + 1):
                if not _hamming_valid(n, w, t):
                    continue
                base_target = PointSet(w, tuple(x for x in _cube(w) if x != (1,) * w))
                base = epc_oracle(CoverSpec(base_target, t, 0)).witness
                P = construct_hamming_ball_cover(n, w, t, base)
                spec = CoverSpec(SymmetricSet(n, tuple(range(w))), t, 0)
                out.append(_cover_cert("hamming-ball", "hamming-ball", spec, w + 2 * t - 3, P, "epc",
                                       limits, extra={"w": w}))
    S = SymmetricSet(3, (0, 1))
    spec = CoverSpec(S, 2, 0)
    res = epc_oracle(spec)
    out.append(_cover_cert("hamming-ball", "hamming-ball", spec, 3, res.witness, "epc", limits,
                           extra={"w": 2}))
    out.append(_oracle_cert("hamming-ball", "hyperplanes-exceed-degree", spec, 3, "ehc",
                            {**limits, "ehc_max_n": max(3, _lim(limits, "ehc_max_n", 3))},
                            relation="gt", extra={"w": 2}))
    return out


def suite_layer_t0(limits):
    out = []
    for n in range(1, _lim(limits, "max_n", 4) + 1):
        for w in range(n + 1):
            for t in range(1, _lim(limits, "max_t", 3) + 1):
                spec = CoverSpec(SymmetricSet.layer(n, w), t, 0)
                P = construct_layer_power_cover(n, w, t)
                out.append(_cover_cert("layer-t0", "layer-low-exactness", spec, t, P, "epc", limits,
                                       extra={"w": w}))
    return out


def _outer_intact_order(S):
    for order in itertools.product(("asc", "desc"), repeat=S.k):
        lat, _ = index_lattice(S, order)
        if is_downward_closed(lat.members) and outer_intact_check(S, order):
            return order
    return None


def suite_index_pdc(limits):
    out = []
    for sizes in _block_sizes(_lim(limits, "max_n", 6), max_part=3):
        st = BlockStructure(sizes)
        tuples = st.all_tuples()
        for mask in range(1, 1 << len(tuples)):
            S = BlockSymmetricSet(st, frozenset(tp for i, tp in enumerate(tuples) if mask >> i & 1))
            order = _outer_intact_order(S)
            if order is None:
                continue
            formula = block_index_complexity(S, order)
            bf = index_complexity_bruteforce(S.to_pointset())
            cert = _index_cert("index-pdc", "pdc-index", S, formula, bf,
                               extra={"order": list(order), "sizes": list(sizes)})
            if len(S.tuples) == 1:
                (tp,) = S.tuples
                layer = sum(min(w, s - w) for w, s in zip(tp, sizes))
                cert.checks.append({"name": "k-layer-formula", "ok": layer == formula, "value": layer})
            out.append(_finish(cert))
    return out


SUITES = {
    "alon-furedi": suite_alon_furedi,
    "sauermann-wigderson": suite_sauermann_wigderson,
    "clifton-huang-small": suite_clifton_huang_small,
    "symmetric-multiplicity-one": suite_symmetric_multiplicity_one,
    "layer-complement": suite_layer_complement,
    "inner-outer": suite_inner_outer,
    "index-symmetric": suite_index_symmetric,
    "multiplicity-symmetric": suite_multiplicity_symmetric,
    "multiplicity-block": suite_multiplicity_block,
    "subcube": suite_subcube,
    "pdc": suite_pdc,
    "pdc-discrepancy": suite_pdc_discrepancy,
    "hamming-ball": suite_hamming_ball,
    "layer-t0": suite_layer_t0,
    "index-pdc": suite_index_pdc,
}


def reproduce(suite: str, max_n=None, max_t=None, ehc_max_n=None) -> list:
    """Run one suite; ``max_n``/``max_t`` override the suite's default sweep."""
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(sorted(SUITES))}")
    limits = {"max_n": max_n, "max_t": max_t, "ehc_max_n": ehc_max_n}
    limits = {k: v for k, v in limits.items() if v is not None}
    return sorted(SUITES[suite](limits), key=Certificate.sort_key)


# ---------------------------------------------------------------- checking and reports


def check_certificate(d: dict) -> list:
    """Re-verify a certificate from its JSON; returns a list of problems."""
    problems = []
    w = d["witness"]
    kind = w.get("type")
    inst = d["instance"]
    if kind in ("hyperplanes", "polynomial"):
        spec = CoverSpec.from_json(inst["spec"])
        wit = witness_from_json(w)
        rep = verify_cover(wit, spec)
        if not rep.ok:
            problems.append(f"witness fails: {rep.violations[:3]}")
        if rep.measure != w["measure"]:
            problems.append(f"witness measure {rep.measure} != recorded {w['measure']}")
    elif kind == "index":
        target = target_from_json(inst["set"])
        pts = set(target.points) if isinstance(target, PointSet) else set(target.points())
        if not _separates(pts, tuple(w["point"]), w["coords"]):
            problems.append("index witness does not separate its point")
        if len(w["coords"]) != w["measure"]:
            problems.append("index witness size differs from recorded measure")
    elif kind == "exhaustive":
        count, exc = _inner_outer_sweep(inst["n"])
        if exc != w["exceptions"] or count != w["measure"]:
            problems.append("sweep result differs from the recorded one")
    elif kind != "none":
        problems.append(f"unknown witness type {kind!r}")
    checks_ok = all(c["ok"] for c in d["checks"])
    ov = d.get("oracle_value")
    if d["status"] == CONFIRMED:
        if problems or not checks_ok:
            problems.append("status confirmed but checks fail")
        if ov is not None and not _relation_holds(d.get("relation", "eq"), ov, d["formula_value"]):
            problems.append("status confirmed but oracle value does not match the formula")
    return problems


def emit_report(certs, fmt: str = "table") -> str:
    certs = sorted(certs, key=Certificate.sort_key)
    if fmt == "json":
        return dumps([c.to_json() for c in certs]) + "\n"
    if fmt != "table":
        raise DomainError(f"unknown format {fmt!r}")
    header = f"{'suite':<24}{'n':>3}{'t':>3}  {'claim':<30}{'formula':>8}  {'oracle':<11}{'value':>6}  status"
    lines = [header, "-" * len(header)]
    marks = {CONFIRMED: "✓", DISCREPANCY: "✗", SKIPPED: "-"}
    for c in certs:
        ov = "" if c.oracle_value is None else str(c.oracle_value)
        lines.append(
            f"{c.suite:<24}{c.instance.get('n', ''):>3}{c.instance.get('t', ''):>3}  {c.claim:<30}"
            f"{c.formula_value:>8}  {c.oracle or '':<11}{ov:>6}  {marks[c.status]} {c.status}"
        )
    if certs:
        counts = {s: sum(c.status == s for c in certs) for s in (CONFIRMED, DISCREPANCY, SKIPPED)}
        lines.append("-" * len(header))
        lines.append(", ".join(f"{v} {k}" for k, v in counts.items()))
        bad = sorted({c.suite for c in certs if c.status == DISCREPANCY})
        if bad:
            lines.append("discrepancies in: " + ", ".join(bad))
    return "\n".join(lines) + "\n"


def certificate_from_json(d: dict) -> Certificate:
    return Certificate(d["suite"], d["claim"], d["instance"], d["formula_value"], d.get("oracle_value"),
                       d["witness"], d.get("checks", []), d["status"], d.get("oracle"),
                       d.get("relation", "eq"))
