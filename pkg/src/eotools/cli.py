"""Command-line front end.

Every subcommand builds a Report with ``command``, ``inputs``, ``results``,
``verdicts`` and ``elapsed_ms``.  Exit codes: 0 all verdicts pass, 1 some
verdict fails, 2 usage error, 3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable

from .fp_algebra import is_prime
from .morava import SolverFailure, find_order_p_unit, t_valuation, verify_tk_lemma
from .nilpotent import coproduct_chi_check
from .orientation import eo_bound, known_orders_report, theta_sphere_valuation
from .splitting import (
    decompose_stunted, finite_part_support, ko_blocks, ko_pattern, predicted_free_generators,
    tate_transition, thom_shift_linearity, verify_free_generators,
)
from .stunted import PkParams

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# claim labels used in verdicts
REF_KO = "KO smash CP^infty splits as KO plus suspensions of KU in degrees 4k-2"
REF_FREE = "cells b_{pi} above beta_k + c generate the free part"
REF_SKELETON = "finite summand factors through the beta_hat skeleton"
REF_THOM = "mod-p Thom isomorphism is B(k)-linear when p divides c"
REF_TATE = "transition maps between Tate stages are surjective on free parts"
REF_BOUND = "EO orientation order of gamma divides p^(p^k - 1)"
REF_ATIYAH_TODD = "Atiyah-Todd sphere orientation order of gamma^n"
REF_KNOWN = "conjecture p^k | known orders | bound p^(p^k - 1)"
REF_TK = "order-p automorphism has t_i = 0 for i < k and t_k a unit"
REF_COPRODUCT = "chi-bar is primitive in the associated graded group ring"
REF_DIMENSION = "block sizes account for every cell"


@dataclass
class Verdict:
    claim: str
    paper_ref: str
    passed: bool
    operation: str

    def as_dict(self) -> dict:
        return {"claim": self.claim, "paper_ref": self.paper_ref, "pass": self.passed,
                "operation": self.operation}


@dataclass
class Report:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    elapsed_ms: float | None = None

    def verdict(self, claim: str, ref: str, ok: bool, operation: str) -> None:
        self.verdicts.append(Verdict(claim, ref, bool(ok), operation))

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def as_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "results": self.results,
                "verdicts": [v.as_dict() for v in self.verdicts],
                "elapsed_ms": self.elapsed_ms}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        verdicts = [Verdict(v["claim"], v["paper_ref"], v["pass"], v["operation"])
                    for v in d["verdicts"]]
        return cls(d["command"], d["inputs"], d["results"], verdicts, d.get("elapsed_ms"))

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        lines += [f"  {k:<12} {v}" for k, v in sorted(self.inputs.items())]
        lines.append("results:")
        for k, v in self.results.items():
            lines.append(f"  {k:<24} {_short(v)}")
        if self.verdicts:
            lines.append("verdicts:")
            width = max(len(v.claim) for v in self.verdicts)
            for v in self.verdicts:
                lines.append(f"  [{'PASS' if v.passed else 'FAIL'}] {v.claim:<{width}}  ({v.operation})")
        if self.elapsed_ms is not None:
            lines.append(f"elapsed_ms: {self.elapsed_ms:.1f}")
        return "\n".join(lines)


def _short(v: Any, limit: int = 100) -> str:
    s = json.dumps(v, sort_keys=True) if not isinstance(v, str) else v
    return s if len(s) <= limit else s[: limit - 3] + "..."


# --- subcommand bodies -------------------------------------------------------

def _params(a) -> PkParams:
    return PkParams(a.p, a.k)


def cmd_decompose(a, rep: Report) -> None:
    params = _params(a)
    r = decompose_stunted(params, a.c, a.top)
    rep.results.update(r.as_dict())
    counted = r.free_rank * params.p + sum(r.finite_blocks) + sum(b.size for b in r.boundary_blocks)
    rep.verdict("dimension count", REF_DIMENSION, counted == a.top - a.c + 1, "decompose_stunted")
    if (params.p, params.k) == (2, 1) and a.c == 0:
        rep.verdict("KO pattern", REF_KO, _ko_ok(r), "decompose_stunted")


def _ko_ok(r) -> bool:
    fin = r.finite
    bottoms = r.free_socle_degrees
    return (len(fin) == 1 and fin[0].size == 1 and fin[0].bottom_degree == 0
            and bottoms == [4 * j - 2 for j in range(1, len(bottoms) + 1)])


def cmd_free_gens(a, rep: Report) -> None:
    params = _params(a)
    rep.results["predicted_generators"] = predicted_free_generators(params, a.c, a.top)
    rep.verdict("free generators", REF_FREE, verify_free_generators(params, a.c, a.top),
                "verify_free_generators")


def cmd_finite_support(a, rep: Report) -> None:
    params = _params(a)
    s = finite_part_support(params, a.c, a.top)
    rep.results.update(s._asdict())
    rep.verdict("finite part in skeleton", REF_SKELETON, s.within_skeleton, "finite_part_support")


def cmd_thom_linear(a, rep: Report) -> None:
    params = _params(a)
    ok = thom_shift_linearity(params, a.c, a.top)
    expected = a.c % params.p == 0
    rep.results.update(linear=ok, expected=expected)
    rep.verdict("Thom shift linearity", REF_THOM, ok == expected, "thom_shift_linearity")


def cmd_tate_check(a, rep: Report) -> None:
    params = _params(a)
    bh = params.beta_hat
    stages = []
    for i in range(a.stage, 0, -1):
        tr = tate_transition(params, -i * bh, a.top)
        stages.append(asdict(tr))
        rep.verdict(f"Tate transition from bottom {-i * bh}", REF_TATE,
                    tr.module_map and tr.socle_covered, "tate_transition_surjective")
    rep.results["stages"] = stages


def cmd_ko_pattern(a, rep: Report) -> None:
    r = ko_blocks(a.top)
    rep.results["bottom_degrees"] = ko_pattern(a.top)
    rep.results["boundary_bottom_degrees"] = sorted(b.bottom_degree for b in r.boundary_blocks)
    rep.verdict("KO pattern", REF_KO, _ko_ok(r), "ko_pattern")


def cmd_orient_order(a, rep: Report) -> None:
    n = a.n if a.n is not None else PkParams(a.p, a.k).beta_hat - 1
    rep.results.update(n=n, sphere_valuation=theta_sphere_valuation(a.p, n))


def cmd_bound(a, rep: Report) -> None:
    r = eo_bound(a.p, a.k)
    rep.results.update(r.as_dict())
    rep.verdict("bound identity", REF_BOUND, r.sphere_valuation == r.bound_valuation, "eo_bound")


def cmd_known_orders(a, rep: Report) -> None:
    t = known_orders_report(a.p, a.k, a.n)
    rep.results.update(t.as_dict())
    rep.verdict("divisibility chain", REF_KNOWN, t.chain_holds, "known_orders_report")


def cmd_order_p_element(a, rep: Report) -> None:
    M = a.precision or 3 * a.k * (a.p - 1) + 1
    z = find_order_p_unit(a.p, a.k, M)
    rep.results.update(n=z.ring.n, M=M, digits=list(z.digits),
                       valuation_of_zeta_minus_1=str(t_valuation(z - z.ring.one())))
    rep.verdict("zeta^p = 1", REF_TK, (z ** a.p) == z.ring.one() and z != z.ring.one(),
                "find_order_p_unit")


def cmd_verify_tk(a, rep: Report) -> None:
    M = a.precision or 3 * a.k * (a.p - 1) + 1
    r = verify_tk_lemma(a.p, a.k, M)
    rep.results.update(r.as_dict())
    rep.verdict("t_i vanish below k, t_k unit", REF_TK, r.passed, "verify_tk_lemma")


def cmd_coproduct(a, rep: Report) -> None:
    r = coproduct_chi_check(a.p, a.k)
    rep.results.update(identity_holds=r.identity_holds, chi_p_vanishes=r.chi_p_vanishes,
                       terms={f"{i},{j}": v for (i, j), v in sorted(r.chi_basis_terms.items())},
                       linear_weight=r.linear_weight, cross_term_weight=r.cross_term_weight)
    rep.verdict("coproduct primitivity", REF_COPRODUCT, r.passed, "coproduct_chi_check")


# --- sweep -------------------------------------------------------------------

def _battery(point: dict) -> dict:
    """Run every applicable check at one grid point; errors are captured per check."""
    p, k = point["p"], point["k"]
    c = point.get("c", 0)
    params = PkParams(p, k)
    top = point.get("top", c + 4 * p * params.shift)
    out = {"point": {"p": p, "k": k, "c": c, "top": top}, "verdicts": [], "errors": []}

    def run(name: str, ref: str, fn: Callable[[], bool]):
        try:
            ok = bool(fn())
        except (ValueError, AssertionError, SolverFailure) as e:
            out["errors"].append({"check": name, "error": f"{type(e).__name__}: {e}"})
            ok = False
        out["verdicts"].append({"claim": name, "paper_ref": ref, "pass": ok})

    run("dimension count", REF_DIMENSION, lambda: _dim_ok(params, c, top))
    run("free generators", REF_FREE, lambda: verify_free_generators(params, c, top))
    run("finite part in skeleton", REF_SKELETON,
        lambda: finite_part_support(params, c, top).within_skeleton)
    run("Thom shift linearity", REF_THOM,
        lambda: thom_shift_linearity(params, c, top) == (c % p == 0))
    run("Tate transition", REF_TATE,
        lambda: all(tate_transition(params, c - i * params.beta_hat, top).socle_covered
                    for i in range(1, 4)))
    run("bound identity", REF_BOUND,
        lambda: eo_bound(p, k).sphere_valuation == p**k - 1)
    run("coproduct primitivity", REF_COPRODUCT, lambda: coproduct_chi_check(p, k).passed)
    if p ** params.n <= 3**4:
        run("t_i vanish below k, t_k unit", REF_TK,
            lambda: verify_tk_lemma(p, k, 3 * params.n + 1).passed)
    out["pass"] = all(v["pass"] for v in out["verdicts"])
    return out


def _dim_ok(params, c, top) -> bool:
    r = decompose_stunted(params, c, top)
    total = r.free_rank * params.p + sum(r.finite_blocks) + sum(b.size for b in r.boundary_blocks)
    return total == top - c + 1


def load_grid(path: str) -> list[dict]:
    data = json.loads(Path(path).read_text())
    points = data.get("points", []) if isinstance(data, dict) else data
    for pt in points:
        if not is_prime(pt.get("p", 0)) or pt.get("k", 0) < 1:
            raise ValueError(f"invalid grid point {pt}")
    return points


def sweep(points: list[dict], workers: int = 4) -> Report:
    rep = Report("sweep", {"points": points})
    if points:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_battery, points))
    else:
        results = []
    rep.results["points"] = results
    for res in results:
        pt = res["point"]
        for v in res["verdicts"]:
            rep.verdict(f"{v['claim']} @ p={pt['p']} k={pt['k']} c={pt['c']}", v["paper_ref"],
                        v["pass"], "sweep")
    return rep


def cmd_sweep(a, rep: Report) -> None:
    points = load_grid(a.grid) if a.grid else []
    inner = sweep(points)
    rep.inputs["points"] = points
    rep.results.update(inner.results)
    rep.verdicts.extend(inner.verdicts)


# --- argument parsing ----------------------------------------------------------

COMMANDS: dict[str, tuple[Callable, tuple[str, ...], str]] = {
    "decompose": (cmd_decompose, ("p", "k", "c", "top"), "Jordan decomposition of P_k on CP^top_c"),
    "free-gens": (cmd_free_gens, ("p", "k", "c", "top"), "check the predicted free generators"),
    "finite-support": (cmd_finite_support, ("p", "k", "c", "top"), "skeletal support of the finite part"),
    "thom-linear": (cmd_thom_linear, ("p", "k", "c", "top"), "B(k)-linearity of the Thom shift"),
    "tate-check": (cmd_tate_check, ("p", "k", "stage", "top"), "surjectivity of Tate transition maps"),
    "ko-pattern": (cmd_ko_pattern, ("top",), "the KO smash CP^infty pattern at p = 2"),
    "orient-order": (cmd_orient_order, ("p", "k", "n"), "sphere orientation order valuation over CP^n"),
    "bound": (cmd_bound, ("p", "k"), "the EO orientation bound"),
    "known-orders": (cmd_known_orders, ("p", "k", "n"), "bound vs known values vs conjecture"),
    "order-p-element": (cmd_order_p_element, ("p", "k", "precision"), "search for an order-p automorphism"),
    "verify-tk": (cmd_verify_tk, ("p", "k", "precision"), "digit vanishing for order-p automorphisms"),
    "coproduct": (cmd_coproduct, ("p", "k"), "coproduct of chi = zeta - 1"),
    "sweep": (cmd_sweep, ("grid",), "run the verification battery over a grid file"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _prime(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{s!r} is not an integer")
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{v} must be positive")
    return v


_FLAGS = {
    "p": dict(type=_prime, required=True, help="prime"),
    "k": dict(type=_positive, default=1, help="index of P_k (height n = k(p-1))"),
    "c": dict(type=int, default=0, help="bottom cell"),
    "top": dict(type=int, default=40, help="top cell"),
    "stage": dict(type=_positive, default=5, help="number of consecutive Tate stages"),
    "precision": dict(type=_positive, default=None, help="T-adic precision M"),
    "n": dict(type=_positive, default=None, help="projective space dimension override"),
    "grid": dict(type=str, default=None, help="JSON grid file"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eotools", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, flags, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        for f in flags:
            names = [f"--{f}", "--bot"] if f == "c" else [f"--{f}"]
            sp.add_argument(*names, dest=f, **_FLAGS[f])
        if name == "ko-pattern":
            sp.set_defaults(top=40)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--no-timing", action="store_true", help="omit elapsed_ms (byte-stable output)")
    return parser


def run(argv: list[str] | None = None) -> tuple[Report | None, int]:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return None, EXIT_USAGE if e.code else EXIT_OK
    fn, flags, _ = COMMANDS[a.command]
    rep = Report(a.command, {f: getattr(a, f) for f in flags})
    if "top" in flags and "c" in flags and a.top < a.c:
        print(f"eotools {a.command}: error: top {a.top} < c {a.c}", file=sys.stderr)
        return None, EXIT_USAGE
    t0 = time.perf_counter()
    try:
        fn(a, rep)
    except (AssertionError, SolverFailure) as e:
        rep.results["error"] = f"{type(e).__name__}: {e}"
        rep.elapsed_ms = None if a.no_timing else (time.perf_counter() - t0) * 1e3
        _emit(rep, a)
        return rep, EXIT_INTERNAL
    except ValueError as e:
        print(f"eotools {a.command}: error: {e}", file=sys.stderr)
        return None, EXIT_USAGE
    rep.elapsed_ms = None if a.no_timing else round((time.perf_counter() - t0) * 1e3, 3)
    _emit(rep, a)
    return rep, EXIT_OK if rep.passed else EXIT_VERDICT


def _emit(rep: Report, a) -> None:
    print(rep.to_json() if a.json else rep.to_text())


def main(argv: list[str] | None = None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
