"""Command-line front end.

Exit codes: 0 ok, 1 usage or domain error, 2 verification failure,
3 discrepancy outside the quarantined suites.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys

from .blockcore import BlockSymmetricSet, block_index_complexity, pdc_check
from .covers import (
    CoverSpec,
    construct_grid_cover,
    construct_grid_self_cover,
    construct_hamming_ball_cover,
    construct_layer_power_cover,
    construct_pdc_polynomial_cover,
    construct_symmetric_cover,
    target_from_json,
    verify_cover,
    witness_from_json,
)
from .errors import DomainError
from .oracles import bepc_oracle, ehc_oracle, epc_oracle
from .reproduce import (
    DISCREPANCY,
    QUARANTINED,
    SUITES,
    certificate_from_json,
    check_certificate,
    dumps,
    emit_report,
    reproduce,
)
from .symcore import (
    PointSet,
    SymmetricSet,
    canonical_weight_window,
    complement_transform,
    index_complexity_bruteforce,
    index_complexity_symmetric,
    inn_measure,
    inner_interval,
    lambda_bar,
    lambda_measure,
    mu,
    mu_bar,
    out_measure,
    outer_interval,
    separation,
)

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_DISCREPANCY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(arg: str):
    """Inline JSON or a path to a JSON file."""
    s = arg.strip()
    if s[:1] in "{[":
        return json.loads(s)
    if not os.path.exists(arg):
        raise DomainError(f"no such file: {arg}")
    with open(arg) as fh:
        return json.load(fh)


def _emit(obj, out=None):
    text = dumps(obj) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _symmetric(arg) -> SymmetricSet:
    T = target_from_json(_load(arg))
    if not isinstance(T, SymmetricSet):
        raise DomainError("expected a symmetric set {'n': .., 'weights': [..]}")
    return T


# ---------------------------------------------------------------- commands


MEASURE_OPS = ["all", "mu", "lambda", "mu-bar", "lambda-bar", "inn", "out", "inner", "outer",
               "index", "index-bruteforce", "complement-transform", "window", "separation"]


def _ints(arg):
    return [int(x) for x in arg.split(",") if x.strip()] if arg else []


def _measures(S):
    d = {"mu": mu(S), "lambda": lambda_measure(S) if not S.is_full else None,
         "mu-bar": mu_bar(S), "lambda-bar": lambda_bar(S) if not S.is_empty else None}
    if not S.is_full:
        d["inn"] = inn_measure(S)
    if not S.is_empty:
        d["out"] = out_measure(S)
    return d


def cmd_measure(a):
    op = a.op
    if op == "window":
        if a.n is None or a.i is None:
            raise DomainError("window needs --n and --i")
        _emit({"op": op, "result": canonical_weight_window(a.n, a.i).to_json()})
        return EXIT_OK
    if op == "separation":
        if a.n is None or a.p is None:
            raise DomainError("separation needs --n, --p and optionally --i0/--i1")
        J = separation(a.n, tuple(_ints(a.p)), tuple(_ints(a.i0)), tuple(_ints(a.i1)))
        _emit({"op": op, "result": J.to_json()})
        return EXIT_OK
    if not a.set:
        raise DomainError(f"{op} needs --set")
    S = _symmetric(a.set)
    if op == "all":
        _emit({"set": S.to_json(), **_measures(S)})
        return EXIT_OK
    if op in ("inner", "outer"):
        result = (inner_interval if op == "inner" else outer_interval)(S).to_json()
    elif op == "index":
        w = index_complexity_symmetric(S)
        result = {"value": w.value, "point": list(w.point), "coords": list(w.coords)}
    elif op == "index-bruteforce":
        w = index_complexity_bruteforce(S.to_pointset())
        result = {"value": w.value, "point": list(w.point), "coords": list(w.coords)}
    elif op == "complement-transform":
        result = complement_transform(S).to_json()
    else:
        result = _measures(S).get(op)
        if result is None:
            raise DomainError(f"{op} is undefined for this set")
    _emit({"set": S.to_json(), "op": op, "result": result})
    return EXIT_OK


def cmd_interval(a):
    S = _symmetric(a.set)
    d = {"set": S.to_json(), "inner": inner_interval(S).to_json()}
    if not S.is_empty:
        d["outer"] = outer_interval(S).to_json()
    _emit(d)
    return EXIT_OK


def cmd_index(a):
    T = target_from_json(_load(a.set))
    d = {"set": T.to_json()}
    if isinstance(T, SymmetricSet):
        w = index_complexity_symmetric(T)
        d["formula"] = {"value": w.value, "point": list(w.point), "coords": list(w.coords)}
        pts = T.to_pointset()
    elif isinstance(T, BlockSymmetricSet):
        if a.order:
            order = a.order.split(",")
        else:
            res = pdc_check(T)
            if res is None:
                raise DomainError("set is not PDC under any order choice")
            order = res.order
        try:
            d["formula"] = {"value": block_index_complexity(T, order), "order": list(order)}
        except DomainError as e:
            d["formula"] = {"value": None, "order": list(order), "reason": str(e)}
        pts = T.to_pointset()
    else:
        pts = T
    if a.bruteforce or not isinstance(T, SymmetricSet):
        b = index_complexity_bruteforce(pts)
        d["bruteforce"] = {"value": b.value, "point": list(b.point), "coords": list(b.coords)}
    _emit(d)
    return EXIT_OK


def cmd_construct(a):
    kind = a.kind
    if kind == "symmetric":
        w = construct_symmetric_cover(_symmetric(a.set), a.t)
    elif kind == "grid":
        parts = [target_from_json(p) for p in _load(a.parts)]
        w = construct_grid_cover(parts, a.t, a.multiplicity)
    elif kind == "grid-self":
        parts = [target_from_json(p) for p in _load(a.parts)]
        w = construct_grid_self_cover(parts, a.t)
    elif kind == "pdc":
        S = target_from_json(_load(a.set))
        if not isinstance(S, BlockSymmetricSet):
            raise DomainError("expected a block set {'sizes': .., 'tuples': ..}")
        order = a.order.split(",") if a.order else None
        w = construct_pdc_polynomial_cover(S, a.t, order, a.variant)
        if isinstance(w, tuple):
            w = w[0]
    elif kind == "layer":
        w = construct_layer_power_cover(a.n, a.w, a.t)
    elif kind == "hamming":
        cube = itertools.product((0, 1), repeat=a.w)
        base_target = PointSet(a.w, tuple(x for x in cube if x != (1,) * a.w))
        base = epc_oracle(CoverSpec(base_target, a.t, 0)).witness
        w = construct_hamming_ball_cover(a.n, a.w, a.t, base)
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(kind)
    _emit(w.to_json(), a.out)
    return EXIT_OK


def cmd_verify(a):
    if a.certificate:
        data = _load(a.certificate)
        certs = data if isinstance(data, list) else [data]
        failures = 0
        for c in certs:
            problems = check_certificate(c)
            failures += bool(problems)
            tag = "ok" if not problems else "FAIL: " + "; ".join(problems)
            print(f"{c['suite']} {c['claim']} n={c['instance'].get('n')}: {tag}")
        return EXIT_VERIFY if failures else EXIT_OK
    if not (a.witness and a.spec):
        raise DomainError("verify needs --certificate, or both --witness and --spec")
    spec = CoverSpec.from_json(_load(a.spec))
    rep = verify_cover(witness_from_json(_load(a.witness)), spec)
    _emit(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_oracle(a):
    spec = CoverSpec.from_json(_load(a.spec))
    if a.kind == "ehc":
        kw = {"max_size": a.max_size}
        if a.max_n is not None:
            kw["max_n"] = a.max_n
        res = ehc_oracle(spec, **kw)
    else:
        kw = {"max_degree": a.max_degree}
        if a.max_n is not None:
            kw["max_n"] = a.max_n
        if a.max_t is not None:
            kw["max_t"] = a.max_t
        res = (epc_oracle if a.kind == "epc" else bepc_oracle)(spec, **kw)
    _emit(res.to_json())
    return EXIT_OK


def _discrepancy_exit(certs):
    bad = [c for c in certs if c.status == DISCREPANCY and c.suite not in QUARANTINED]
    return EXIT_DISCREPANCY if bad else EXIT_OK


def cmd_reproduce(a):
    suites = sorted(SUITES) if a.suite == "all" else [a.suite]
    certs = []
    for s in suites:
        certs.extend(reproduce(s, a.max_n, a.max_t, a.ehc_max_n))
    text = emit_report(certs, a.format)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return _discrepancy_exit(certs)


def cmd_report(a):
    certs = []
    for path in a.files:
        data = _load(path)
        certs.extend(certificate_from_json(d) for d in (data if isinstance(data, list) else [data]))
    sys.stdout.write(emit_report(certs, a.format))
    return _discrepancy_exit(certs)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypercover", description="Exact covers of symmetric subsets of the hypercube.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("measure", help="measures of a symmetric set")
    q.add_argument("op", nargs="?", default="all", choices=MEASURE_OPS)
    q.add_argument("--set", help="symmetric set JSON (inline or file)")
    q.add_argument("--n", type=int)
    q.add_argument("--i", type=int, help="window index")
    q.add_argument("--p", help="bit vector for separation, e.g. 1,0,1")
    q.add_argument("--i0", help="zero coordinates, e.g. 1,3")
    q.add_argument("--i1", help="one coordinates")
    q.set_defaults(func=cmd_measure)

    q = sub.add_parser("interval", help="inner and outer peripheral intervals")
    q.add_argument("--set", required=True)
    q.set_defaults(func=cmd_interval)

    q = sub.add_parser("index", help="index complexity, closed form and brute force")
    q.add_argument("--set", required=True, help="symmetric, point or block set JSON")
    q.add_argument("--order", help="block orders, e.g. asc,desc")
    q.add_argument("--bruteforce", action="store_true")
    q.set_defaults(func=cmd_index)

    q = sub.add_parser("construct", help="build an explicit cover")
    q.add_argument("kind", choices=["symmetric", "grid", "grid-self", "pdc", "layer", "hamming"])
    q.add_argument("--set")
    q.add_argument("--parts", help="JSON list of symmetric sets")
    q.add_argument("--t", type=int, default=1)
    q.add_argument("--n", type=int)
    q.add_argument("--w", type=int)
    q.add_argument("--order")
    q.add_argument("--variant", default="innext", choices=["innext", "literal-outext"])
    q.add_argument("--multiplicity", default="blockwise", choices=["blockwise", "literal"])
    q.add_argument("--out")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("verify", help="check a witness against a spec, or re-check certificates")
    q.add_argument("--witness")
    q.add_argument("--spec")
    q.add_argument("--certificate")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("oracle", help="brute-force minimum degree or size")
    q.add_argument("kind", choices=["epc", "bepc", "ehc"])
    q.add_argument("--spec", required=True)
    q.add_argument("--max-degree", type=int)
    q.add_argument("--max-size", type=int)
    q.add_argument("--max-n", type=int)
    q.add_argument("--max-t", type=int)
    q.set_defaults(func=cmd_oracle)

    q = sub.add_parser("reproduce", help="run a sweep and emit certificates")
    q.add_argument("suite", choices=sorted(SUITES) + ["all"])
    q.add_argument("--max-n", type=int)
    q.add_argument("--max-t", type=int)
    q.add_argument("--ehc-max-n", type=int)
    q.add_argument("--format", default="json", choices=["json", "table"])
    q.add_argument("--out")
    q.set_defaults(func=cmd_reproduce)

    q = sub.add_parser("report", help="render certificate files")
    q.add_argument("files", nargs="+")
    q.add_argument("--format", default="table", choices=["json", "table"])
    q.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, json.JSONDecodeError, KeyError, TypeError) as e:
        print(f"hypercover: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
