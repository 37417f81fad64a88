"""Command-line front end.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import graphs as G
from . import operad as O
from . import suites
from .hmodule import BoundExceeded, ParseError
from .hopf import add_into
from .pseudoalg import (PseudoAlgebraSpec, UnsupportedConversion, ValidationError, build_affine,
                        build_boson, build_fermion, load_spec, shipped_specs)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# reports ------------------------------------------------------------------------------

def _check(name: str, residuals: list, **extra) -> dict:
    return {"name": name, "status": "pass" if not residuals else "fail",
            "failures": len(residuals), "residuals": residuals, **extra}


def _report(suite: str, checks: list, **extra) -> dict:
    return {"suite": suite, "passed": all(c["status"] == "pass" for c in checks), "checks": checks, **extra}


def _emit(report: dict, fmt: str, elapsed: float | None = None, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        return
    head = f"{report['suite']}: {'PASS' if report['passed'] else 'FAIL'}"
    if report.get("spec"):
        head += f" [{report['spec']}]"
    out.write(head + "\n")
    for c in report["checks"]:
        line = f"  {c['status'].upper():4}  {c['name']}"
        if "summary" in c:
            line += f"  ({c['summary']})"
        out.write(line + "\n")
        for r in c["residuals"][:5]:
            out.write(f"        {_fmt_residual(r)}\n")
        if len(c["residuals"]) > 5:
            out.write(f"        ... {len(c['residuals']) - 5} more\n")
    for key in ("output", "lines"):
        if key in report:
            val = report[key]
            for line in (val if isinstance(val, list) else [val]):
                out.write(f"{line}\n")
    if elapsed is not None:
        out.write(f"  ({elapsed:.2f}s)\n")


def _fmt_residual(r) -> str:
    if not isinstance(r, dict):
        return str(r)
    parts = [f"{k}={v}" for k, v in r.items() if k != "residual"]
    tail = f" -> {r['residual']}" if "residual" in r else ""
    return ", ".join(parts) + tail


# commands --------------------------------------------------------------------------------

def _load(path: str) -> PseudoAlgebraSpec:
    return load_spec(path)


def _cyclic_graphs(n: int, max_len: int) -> list:
    """Small graphs containing an oriented cycle, used for the cycle conditions."""
    out = []
    if n == 2:
        out.append(G.Graph(2, ((1, 2), (2, 1))))
    if n == 3:
        out.append(G.Graph(3, ((1, 2), (2, 1))))
        out.append(G.Graph(3, ((1, 2), (2, 1), (2, 3))))
        if max_len >= 3:
            out.append(G.Graph(3, ((1, 2), (2, 3), (3, 1))))
            out.append(G.Graph(3, ((2, 1), (3, 2), (1, 3))))
    return out


def cmd_verify(args) -> tuple[dict, int]:
    spec = _load(args.spec)
    M = spec.module
    D = args.probe_degree
    checks = [
        _check("skewsymmetry", spec.check_skewsymmetry(order=D - 1)),
        _check("jacobi", spec.check_jacobi(order=D - 1)),
    ]
    if spec.is_poisson:
        lb = spec.check_leibniz(max_atoms=D, order=D - 1)
        for ident in ("left_leibniz", "right_leibniz", "iterated_leibniz"):
            checks.append(_check(ident, [r for r in lb if r["identity"] == ident]))
    master = O.poisson_to_master(spec)
    res = O.check_master(master, jobs=args.jobs)
    graphs = G.enumerate_acyclic(3)
    bad = {r["graph"] for r in res}
    checks.append(_check("master", res, summary=f"{len(graphs) - len(bad)}/{len(graphs)} graphs zero"))
    probes2 = O.probe_tuples(M, 2, with_degree_two=D >= 2)
    checks.append(_check("invariance", O.invariance_residuals(master.X, probes2)))
    cyc = O.check_cycle_conditions(master.X, _cyclic_graphs(2, args.cycle_bound), probes2, args.cycle_bound)
    checks.append(_check("cycle_conditions", cyc))
    lin = []
    for Gr in G.enumerate_acyclic(2):
        for v in probes2:
            for i in range(M.N):
                lin += O.check_h_linearity(master.X, Gr, v, M.hopf.gen(i))
    checks.append(_check("h_linearity", lin))
    rep = _report("verify", checks, spec=spec.name or args.spec, probe_degree=D, cycle_bound=args.cycle_bound)
    return rep, EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_bracket(args) -> tuple[dict, int]:
    spec = _load(args.spec)
    a = spec.parse(args.a)
    b = spec.parse(args.b)
    T = spec.bracket_vec(a.terms, b.terms)
    if args.as_lambda:
        text = spec.format_lambda(spec.to_lambda(T))
    else:
        text = spec.module.format_pseudo(T, 2)
    rep = {"suite": "bracket", "passed": True, "checks": [], "spec": spec.name or args.spec,
           "a": args.a, "b": args.b, "lambda": bool(args.as_lambda), "output": text}
    return rep, EXIT_OK


def cmd_master(args) -> tuple[dict, int]:
    spec = _load(args.spec)
    master = O.poisson_to_master(spec)
    res = O.check_master(master, jobs=args.jobs)
    graphs = G.enumerate_acyclic(3)
    bad = {r["graph"] for r in res}
    checks = [_check(f"graph {g}", [r for r in res if r["graph"] == str(g)],
                     case=O.CASES[len(g.edges)]) for g in graphs]
    rep = _report("master", checks, spec=spec.name or args.spec,
                  output=f"{len(graphs) - len(bad)}/{len(graphs)} graphs zero")
    return rep, EXIT_OK if rep["passed"] else EXIT_FAIL


def _parity_of(v) -> int:
    return {"even": 0, "odd": 1, "0": 0, "1": 1}[str(v).lower()]


def load_cochain(spec: PseudoAlgebraSpec, obj: dict) -> O.OperadElement:
    """Cochain from JSON: a class (degree -1), a derivation or weight map
    (degree 0), or an edgeless table on generator tuples (free modules)."""
    M = spec.module
    deg = int(obj.get("degree", 0))
    if deg == -1:
        return O.quotient_element(M, M.parse(obj["value"], spec.central), obj.get("name", "v"))
    if deg == 0 and "derivation" in obj:
        imgs = {g: M.parse(t, spec.central) for g, t in obj["derivation"].items()}
        if "parity" in obj:
            par = _parity_of(obj["parity"])
        else:
            # read the parity off the first nonzero image
            par = next(((M.parity(m) + M.parities[M.index[g]]) % 2
                        for g, vec in imgs.items() for m in vec), 0)
        return O.derivation_element(M, imgs, par, obj.get("name", "D"))
    if deg == 0 and "weights" in obj:
        return O.weight_element(M, {int(k): Fraction(str(v)) for k, v in obj["weights"].items()},
                                obj.get("name", "W"))
    if "table" in obj:
        if not M.is_free:
            raise ValidationError("table cochains are supported on free modules only")
        n = deg + 1
        table = {}
        for idx, entry in enumerate(obj["table"]):
            gens = tuple(M.index[a] for a in entry["args"])
            if len(gens) != n:
                raise ValidationError(f"table[{idx}] needs {n} arguments")
            if n == 0:
                vec = M.parse(entry["value"], spec.central)
                T = {((), m): c for m, c in vec.items()}
            else:
                arity, T = M.parse_pseudo(entry["value"], spec.central)
                if T and arity != n:
                    raise ValidationError(f"table[{idx}] value must have {n} slots")
            table[gens] = T
        return O.free_element(M, n, _parity_of(obj.get("parity", 0)), {frozenset(): table},
                              name=obj.get("name", "f"))
    raise ValidationError("cochain needs 'value' (degree -1), 'derivation', 'weights' or 'table'")


def cmd_cohomology(args) -> tuple[dict, int]:
    spec = _load(args.spec)
    M = spec.module
    master = O.poisson_to_master(spec)
    Xstar = O.phi(master.X)
    X = Xstar if args.variational else master.X
    if args.cochain:
        obj = json.loads(Path(args.cochain).read_text(encoding="utf-8"))
        f = load_cochain(spec, obj)
    else:
        f = X
    checks = []
    if args.variational:
        lb = O.check_variational_leibniz(f)
        checks.append(_check("leibniz_condition", lb))
        if lb:
            return _report("cohomology", checks, spec=spec.name or args.spec, cochain=f.name), EXIT_FAIL
        image = O.variational_differential(Xstar, f, check=False)
    else:
        image = O.classical_differential(master, f)
    n = image.arity
    probes = list(itertools.product(O.generator_monomials(M), repeat=n))
    gl = G.enumerate_acyclic(n) if n <= 4 else [G.edgeless(n)]
    if args.variational:
        gl = [g for g in gl if not g.edges]
    res = O.compare(image, O.zero(M, n), gl, probes)
    closed = not res
    lines = [f"cochain {f.name}: degree {f.arity - 1}, image degree {n - 1}, "
             f"{'closed' if closed else 'not closed'} on {len(gl)} graphs x {len(probes)} probes"]
    checks.append({"name": "image", "status": "pass", "failures": 0, "residuals": res,
                   "summary": "closed" if closed else f"{len(res)} nonzero values"})
    if not args.cochain:
        checks[-1]["status"] = "pass" if closed else "fail"
    rep = _report("cohomology", checks, spec=spec.name or args.spec, cochain=f.name,
                  closed=closed, lines=lines)
    return rep, EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_graphs(args) -> tuple[dict, int]:
    if args.action == "enumerate":
        if args.n is None:
            raise UsageError("graphs enumerate needs N")
        try:
            gl = G.enumerate_acyclic(args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rep = {"suite": "graphs", "passed": True, "checks": [], "n": args.n, "count": len(gl),
               "graphs": [str(g) for g in gl], "output": [str(len(gl))] + ([str(g) for g in gl] if args.list else [])}
        return rep, EXIT_OK
    gold = suites.golden_graphs()
    checks = [_check(g["name"], [] if g["ok"] else [{"got": g["got"], "expected": g["expected"]}]) for g in gold]
    ex = [g for g in gold if not g["name"].startswith("count")]
    cnt = [g for g in gold if g["name"].startswith("count")]
    rep = _report("graphs golden", checks, output=[
        f"{sum(g['ok'] for g in ex)}/{len(ex)} match",
        f"counts {sum(g['ok'] for g in cnt)}/{len(cnt)} match"])
    return rep, EXIT_OK if rep["passed"] else EXIT_FAIL


def selftest_report(seed: int, quick: bool = True) -> dict:
    """Deterministic randomized mini-suite over every module."""
    rng = random.Random(seed)
    checks = []
    checks.append(_check("hopf identities", suites.hopf_suite(rng, 10 if quick else 200)))
    checks.append(_check("graph goldens", [g for g in suites.golden_graphs() if not g["ok"]]))
    checks.append(_check("cooperad laws", suites.cooperad_suite(rng, 50 if quick else 500)))
    for name in shipped_specs():
        spec = load_spec(name)
        res = spec.check_skewsymmetry() + spec.check_jacobi()
        expect_fail = "broken" in name
        checks.append(_check(f"pseudoalgebra {name}", [] if bool(res) == expect_fail else res or ["expected failure"],
                             expected="fail" if expect_fail else "pass"))
    boson = build_boson()
    lam = []
    for _ in range(20):
        T = suites.random_bracket_value(boson, rng)
        if boson.from_lambda(boson.to_lambda(T)) != T:
            lam.append(boson.module.format_pseudo(T, 2))
    checks.append(_check("lambda round trip", lam))
    for name, spec in (("boson", boson), ("fermion", build_fermion()), ("affine", build_affine())):
        checks.append(_check(f"master {name}", O.check_master(O.poisson_to_master(spec))))
    for kind in ("jacobi", "leibniz", "associativity"):
        res = O.check_master(O.negative_control(kind))
        cases = sorted({r["case"] for r in res})
        checks.append(_check(f"negative control {kind}", [] if cases == [kind] else [{"cases": cases}]))
    M = boson.module
    X = O.poisson_to_master(boson).X
    pool = [O.unit(M), X, O.random_derivation(M, rng), O.random_quotient_element(M, rng),
            O.random_weight_map(M, rng)]
    monos = [m for m in M.monomials_up_to(2) if m]
    ax = []
    for _ in range(5):
        ax += suites.operad_axiom_instance(rng, pool, monos)
    checks.append(_check("operad axioms (boson)", ax))
    master = O.poisson_to_master(boson)
    dd = []
    for _ in range(4):
        f = rng.choice([O.random_quotient_element, O.random_derivation])(M, rng)
        img = O.classical_differential(master, O.classical_differential(master, f))
        n = img.arity
        dd += O.compare(img, O.zero(M, n), G.enumerate_acyclic(n), itertools.product(O.generator_monomials(M), repeat=n))
    checks.append(_check("ad_X squared", dd))
    return _report("selftest", checks, seed=seed)


def cmd_selftest(args) -> tuple[dict, int]:
    rep = selftest_report(args.seed, quick=not args.full)
    return rep, EXIT_OK if rep["passed"] else EXIT_FAIL


# parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    common.add_argument("--probe-degree", type=_positive, default=2,
                        help="probe monomials have at most this many atoms, atoms at most this order minus one")
    common.add_argument("--cycle-bound", type=_positive, default=3, help="longest cycle for the second cycle condition")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=_positive, default=1, help="worker threads for graph evaluation")
    p = argparse.ArgumentParser(prog="poissonoperad", parents=[common],
                                description="Exact checks for Poisson pseudoalgebras and the classical operad.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("verify", parents=[common], help="run all axiom checks on a spec file")
    s.add_argument("spec")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("bracket", parents=[common], help="compute [a*b]")
    s.add_argument("spec")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--lambda", dest="as_lambda", action="store_true", help="print the lambda-bracket (abelian H)")
    s.set_defaults(func=cmd_bracket)
    s = sub.add_parser("master", parents=[common], help="check X box X on all acyclic 3-graphs")
    s.add_argument("spec")
    s.set_defaults(func=cmd_master)
    s = sub.add_parser("cohomology", parents=[common], help="apply ad_X (or ad_X*) to a cochain")
    s.add_argument("spec")
    s.add_argument("--cochain", help="cochain JSON file; defaults to the master element itself")
    s.add_argument("--variational", action="store_true", help="use the edgeless suboperad and X*")
    s.set_defaults(func=cmd_cohomology)
    s = sub.add_parser("graphs", parents=[common], help="enumerate acyclic graphs or replay goldens")
    s.add_argument("action", choices=("enumerate", "golden"))
    s.add_argument("n", nargs="?", type=int)
    s.add_argument("--list", action="store_true", help="also print the graphs")
    s.set_defaults(func=cmd_graphs)
    s = sub.add_parser("selftest", parents=[common], help="deterministic randomized self test")
    s.add_argument("--full", action="store_true", help="run the larger instance counts")
    s.set_defaults(func=cmd_selftest)
    return p


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep, code = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"parse error: line {exc.lineno}, column {exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, UnsupportedConversion, UsageError, FileNotFoundError, BoundExceeded,
            O.PreconditionFailed, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = None if args.format == "json" else time.perf_counter() - t0
    _emit(rep, args.format, elapsed)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
