"""Command-line interface: graph ingestion, reports, and the verify suite.

Exit codes: 0 success, 1 usage, 2 invalid graph input, 3 numeric
non-convergence (divergence before a certified root, or an enumeration
budget overrun), 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import __version__
from .closed_forms import (
    FamilyParams,
    family_entropy,
    family_entropy_poly,
    family_zeta,
    _cubic_branch,
)
from .entropy import (
    entropy_bounds,
    entropy_markov_dyck,
    entropy_periodic_estimate,
)
from .errors import (
    BudgetExceeded,
    DyckZetaError,
    InvalidGraph,
    NoRoot,
    SingularityBeforeRoot,
)
from .graphs import Graph, build_graph, char_poly, char_poly_minor, first_return_series
from .semigroup import DEFAULT_BUDGET, count_code_words, count_periodic, count_words
from .series import Series, markov_dyck_zeta, periodic_counts_from_zeta, solve_code_system

USAGE_EXIT = 1
GRAPH_EXIT = 2
NUMERIC_EXIT = 3
VERIFY_EXIT = 4


@dataclass
class RunConfig:
    command: str
    graph_path: str | None = None
    a: int | None = None
    b: int | None = None
    c: int | None = None
    order: int = 32
    max_n: int = 8
    tol: float = 1e-10
    window_factor: int | None = None
    format: str = "json"
    out: str | None = None
    threads: int = 1
    budget: int = DEFAULT_BUDGET

    def validate(self):
        if self.order < 2:
            raise _Usage("--order must be >= 2")
        if self.max_n < 1:
            raise _Usage("--max-n must be >= 1")
        if self.tol <= 0:
            raise _Usage("--tol must be positive")
        if self.threads < 1:
            raise _Usage("--threads must be >= 1")
        if self.budget < 1:
            raise _Usage("--budget must be >= 1")

    def to_dict(self):
        return {
            "command": self.command,
            "graph_path": self.graph_path,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "order": self.order,
            "max_n": self.max_n,
            "tol": self.tol,
            "window_factor": self.window_factor,
            "format": self.format,
            "out": self.out,
            "threads": self.threads,
            "budget": self.budget,
        }


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _round12(value):
    """Canonical 12-significant-digit float for deterministic reports."""
    if value is None or isinstance(value, bool):
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return float(format(value, ".12g"))
    return value


def _canonical(doc):
    if isinstance(doc, dict):
        return {k: _canonical(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_canonical(v) for v in doc]
    return _round12(doc)


def load_graph(path: str) -> Graph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise InvalidGraph(f"cannot read graph file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidGraph(f"graph file {path} is not valid JSON: {exc}") from exc
    return build_graph(spec)


def detect_shape(g: Graph):
    """Closed-form shape detection: one-vertex loops, or the two-vertex
    family [[a, b], [c, 0]] up to swapping the two vertices."""
    if g.vertex_count == 1:
        n = g.adjacency[0][0]
        if n >= 1:
            return ("loops", n)
        return None
    if g.vertex_count == 2:
        adj = g.adjacency
        if adj[1][1] == 0 and min(adj[0][0], adj[0][1], adj[1][0]) >= 1:
            return ("family", (adj[0][0], adj[0][1], adj[1][0]))
        if adj[0][0] == 0 and min(adj[1][1], adj[1][0], adj[0][1]) >= 1:
            return ("family", (adj[1][1], adj[1][0], adj[0][1]))
    return None


def _series_doc(s: Series):
    return {
        "order": s.order,
        "coefficients": s.to_strings(),
        "coefficients_float": [float(c) for c in s.coeffs],
    }


def doc_zeta(g: Graph, cfg: RunConfig):
    zeta = markov_dyck_zeta(g, cfg.order)
    return {
        "zeta": _series_doc(zeta),
        "periodic_counts": periodic_counts_from_zeta(zeta),
    }


def doc_counts(g: Graph, cfg: RunConfig):
    words = [count_words(g, n, budget=cfg.budget) for n in range(1, cfg.max_n + 1)]
    periodic = [count_periodic(g, n, budget=cfg.budget) for n in range(1, cfg.max_n + 1)]
    return {
        "n": list(range(1, cfg.max_n + 1)),
        "words": words,
        "periodic": periodic,
        "entropy_estimates": entropy_periodic_estimate(periodic) if any(periodic) else [],
    }


def doc_series(g: Graph, cfg: RunConfig):
    sol = solve_code_system(g, cfg.order)
    return {
        "vertices": g.vertex_count,
        "code_series": [_series_doc(s) for s in sol.code],
        "star_series": [_series_doc(s) for s in sol.star],
    }


def doc_entropy(g: Graph, cfg: RunConfig):
    doc = {}
    shape = detect_shape(g)
    generic = None
    generic_error = None
    try:
        generic = entropy_markov_dyck(g, tol=cfg.tol)
        doc["entropy"] = generic.to_dict()
    except SingularityBeforeRoot as exc:
        generic_error = str(exc)
        doc["entropy_error"] = generic_error
        periodic = [count_periodic(g, n, budget=cfg.budget) for n in range(1, cfg.max_n + 1)]
        if any(periodic):
            ests = entropy_periodic_estimate(periodic)
            doc["fallback"] = {
                "method": "periodic_estimate",
                "periodic_counts": periodic,
                "estimates": ests,
                "last_estimate": ests[-1],
            }
    if shape is not None:
        kind, data = shape
        if kind == "loops":
            n = data
            doc["closed_form"] = {
                "shape": f"one vertex, {n} loops",
                "value": math.log(n + 1),
                "root": 1.0 / (n + 1),
                "expression": f"log({n + 1})",
            }
        else:
            a, b, c = data
            fam = family_entropy(FamilyParams(a, b, c))
            doc["closed_form"] = {
                "shape": f"two-vertex family a={a} b={b} c={c}",
                "value": fam.value,
                "root": fam.root,
                "expression": fam.closed_form,
            }
        if generic is not None:
            doc["closed_form"]["generic_agreement"] = abs(
                doc["closed_form"]["value"] - generic.value
            )
    if generic is None and "closed_form" not in doc:
        raise SingularityBeforeRoot(generic_error or "entropy root not certified")
    return doc


def doc_bounds(g: Graph, cfg: RunConfig):
    reports, summary = entropy_bounds(g)
    return {
        "bounds": [r.to_dict() for r in reports],
        "summary": summary.to_dict(),
    }


def doc_family(cfg: RunConfig):
    params = FamilyParams(cfg.a, cfg.b, cfg.c)
    poly = family_entropy_poly(params)
    ent = family_entropy(params)
    zeta = family_zeta(params, cfg.order)
    branch = _cubic_branch(params.a, params.b, params.c)
    return {
        "params": {"a": params.a, "b": params.b, "c": params.c},
        "entropy_poly_coefficients": list(poly.coeffs),
        "entropy": ent.to_dict(),
        "zeta": _series_doc(zeta),
        "periodic_counts": periodic_counts_from_zeta(zeta),
        "code_cubic": {
            "g3": list(branch.coeff3.coeffs),
            "g2": list(branch.coeff2.coeffs),
            "g1": list(branch.coeff1.coeffs),
            "g0": list(branch.coeff0.coeffs),
            "mu": list(branch.mu.coeffs),
            "nu": list(branch.nu.coeffs),
        },
        "code_series_second_vertex": _series_doc(branch.series.truncate(cfg.order)),
    }


def verify_graph(g: Graph, cfg: RunConfig):
    """Cross-check suite; returns (checks, all_passed)."""
    checks = []

    def record(name, passed, detail=""):
        checks.append({"check": name, "pass": bool(passed), "detail": detail})

    order = cfg.order
    max_n = min(cfg.max_n, order)
    try:
        zeta = markov_dyck_zeta(g, order)
        record("determinant_forms_agree", True, "both zeta determinant forms identical")
    except DyckZetaError as exc:
        record("determinant_forms_agree", False, str(exc))
        return checks, False

    sol = solve_code_system(g, order)
    try:
        pi = periodic_counts_from_zeta(zeta)
        record("periodic_counts_integral", True, f"n <= {order}")
    except DyckZetaError as exc:
        record("periodic_counts_integral", False, str(exc))
        return checks, False

    oracle_pi = [count_periodic(g, n, budget=cfg.budget) for n in range(1, max_n + 1)]
    ok = oracle_pi == pi[:max_n]
    record(
        "zeta_vs_oracle_periodic",
        ok,
        f"formula {pi[:max_n]} vs oracle {oracle_pi}",
    )

    code_ok = True
    detail = []
    for v in range(g.vertex_count):
        series_counts = [int(sol.code[v].coeff(n)) for n in range(1, max_n + 1)]
        oracle_counts = [count_code_words(g, v, n, "md_code") for n in range(1, max_n + 1)]
        if series_counts != oracle_counts:
            code_ok = False
            detail.append(f"v={v}: {series_counts} vs {oracle_counts}")
    record("code_series_vs_oracle", code_ok, "; ".join(detail) or f"all vertices, n <= {max_n}")

    fr_ok = True
    detail = []
    fr_order = min(order, 15)
    p = char_poly(g)
    for v in range(g.vertex_count):
        pv = char_poly_minor(g, v)
        cofactor = Series.one(fr_order) - Series(p.coeffs, fr_order) / Series(pv.coeffs, fr_order)
        direct = first_return_series(g, v, fr_order)
        if cofactor != direct:
            fr_ok = False
            detail.append(f"v={v}")
    record("first_return_cofactor_identity", fr_ok, "; ".join(detail) or f"order {fr_order}")

    code_nonneg = all(s.is_nonneg_integers() for s in sol.code)
    record("code_coefficients_nonneg_integers", code_nonneg)

    all_ok = all(c["pass"] for c in checks)
    return checks, all_ok


def doc_verify(g: Graph, cfg: RunConfig):
    checks, ok = verify_graph(g, cfg)
    return {"checks": checks, "all_pass": ok}


def doc_report(g: Graph, cfg: RunConfig):
    doc = {
        "zeta": doc_zeta(g, cfg),
        "counts": doc_counts(g, cfg),
        "series": doc_series(g, cfg),
        "entropy": doc_entropy(g, cfg),
        "bounds": doc_bounds(g, cfg),
        "verify": doc_verify(g, cfg),
    }
    shape = detect_shape(g)
    if shape is not None and shape[0] == "family":
        a, b, c = shape[1]
        fam_cfg = RunConfig(command="family", a=a, b=b, c=c, order=cfg.order)
        doc["family"] = doc_family(fam_cfg)
    return doc


def _csv_escape(value) -> str:
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _csv(rows) -> str:
    return "\n".join(",".join(_csv_escape(v) for v in row) for row in rows) + "\n"


def render_csv(command: str, doc: dict) -> str:
    if command == "zeta":
        rows = [("n", "zeta_exact", "zeta_float", "periodic_count")]
        coeffs = doc["zeta"]["coefficients"]
        floats = doc["zeta"]["coefficients_float"]
        pis = doc["periodic_counts"]
        for n, (c, f) in enumerate(zip(coeffs, floats)):
            rows.append((n, c, _round12(float(f)), pis[n - 1] if 1 <= n <= len(pis) else ""))
        return _csv(rows)
    if command == "counts":
        rows = [("n", "words", "periodic", "entropy_estimate")]
        ests = doc["entropy_estimates"]
        for i, n in enumerate(doc["n"]):
            est = _round12(ests[i]) if i < len(ests) else ""
            rows.append((n, doc["words"][i], doc["periodic"][i], est))
        return _csv(rows)
    if command == "series":
        rows = [("vertex", "n", "coefficient_exact", "coefficient_float")]
        for v, sd in enumerate(doc["code_series"]):
            for n, (c, f) in enumerate(zip(sd["coefficients"], sd["coefficients_float"])):
                rows.append((v, n, c, _round12(float(f))))
        return _csv(rows)
    if command == "entropy":
        rows = [("field", "value")]
        flat = doc.get("entropy", {})
        for k, v in flat.items():
            rows.append((k, _round12(v)))
        for k, v in doc.get("closed_form", {}).items():
            rows.append((f"closed_form_{k}", _round12(v)))
        if "entropy_error" in doc:
            rows.append(("entropy_error", doc["entropy_error"]))
        return _csv(rows)
    if command == "bounds":
        rows = [("vertex", "rho", "q_at_rho2", "bound", "applicable", "branch", "note")]
        for b in doc["bounds"]:
            rows.append(
                (b["vertex"], _round12(b["rho"]), _round12(b["q_at_rho2"]),
                 _round12(b["bound"]) if b["bound"] is not None else "",
                 b["applicable"], b["branch"] or "", b["note"] or "")
            )
        s = doc["summary"]
        rows.append(("summary", _round12(s["rho"]), "", _round12(s["value"]) if s["value"] is not None else "",
                     s["applicable"], "", f"best_vertex={s['best_vertex']}"))
        return _csv(rows)
    if command == "family":
        rows = [("field", "value")]
        rows.append(("a", doc["params"]["a"]))
        rows.append(("b", doc["params"]["b"]))
        rows.append(("c", doc["params"]["c"]))
        rows.append(("entropy_poly", " ".join(str(c) for c in doc["entropy_poly_coefficients"])))
        for k, v in doc["entropy"].items():
            rows.append((f"entropy_{k}", _round12(v)))
        for n, c in enumerate(doc["zeta"]["coefficients"]):
            rows.append((f"zeta_{n}", c))
        return _csv(rows)
    if command == "verify":
        rows = [("check", "pass", "detail")]
        for c in doc["checks"]:
            rows.append((c["check"], c["pass"], c["detail"]))
        rows.append(("all", doc["all_pass"], ""))
        return _csv(rows)
    raise _Usage(f"--format csv is not supported for the {command} command")


def build_parser() -> _Parser:
    parser = _Parser(prog="dyckzeta", description=__doc__)
    parser.add_argument("--version", action="version", version=f"dyckzeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = ("zeta", "counts", "series", "entropy", "bounds", "family", "verify", "report")
    for name in commands:
        p = sub.add_parser(name)
        if name == "family":
            p.add_argument("--a", type=int, required=True)
            p.add_argument("--b", type=int, required=True)
            p.add_argument("--c", type=int, required=True)
        else:
            p.add_argument("--graph", required=True, help="path to a graph JSON file")
        p.add_argument("--order", type=int, default=32, help="series truncation order")
        p.add_argument("--max-n", type=int, default=8, dest="max_n", help="oracle word-length cap")
        p.add_argument("--tol", type=float, default=1e-10, help="root tolerance")
        p.add_argument("--window-factor", type=int, default=None, dest="window_factor")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--threads", type=int, default=1,
                       help="reserved for oracle fan-out; results are thread-count independent")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle node cap")
    return parser


def run(cfg: RunConfig) -> tuple[dict, int]:
    """Produce the report document and exit code for a validated config."""
    if cfg.command == "family":
        if min(cfg.a, cfg.b, cfg.c) < 1:
            raise _Usage("family parameters must be positive integers")
        doc = doc_family(cfg)
        return doc, 0
    g = load_graph(cfg.graph_path)
    handlers = {
        "zeta": doc_zeta,
        "counts": doc_counts,
        "series": doc_series,
        "entropy": doc_entropy,
        "bounds": doc_bounds,
        "verify": doc_verify,
        "report": doc_report,
    }
    doc = handlers[cfg.command](g, cfg)
    code = 0
    if cfg.command == "verify" and not doc["all_pass"]:
        code = VERIFY_EXIT
    if cfg.command == "report" and not doc["verify"]["all_pass"]:
        code = VERIFY_EXIT
    return doc, code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    cfg = RunConfig(
        command=args.command,
        graph_path=getattr(args, "graph", None),
        a=getattr(args, "a", None),
        b=getattr(args, "b", None),
        c=getattr(args, "c", None),
        order=args.order,
        max_n=args.max_n,
        tol=args.tol,
        window_factor=args.window_factor,
        format=args.format,
        out=args.out,
        threads=args.threads,
        budget=args.budget,
    )
    try:
        cfg.validate()
        doc, code = run(cfg)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except InvalidGraph as exc:
        print(f"invalid graph: {exc}", file=sys.stderr)
        return GRAPH_EXIT
    except (SingularityBeforeRoot, BudgetExceeded, NoRoot) as exc:
        print(f"not certified: {exc}", file=sys.stderr)
        return NUMERIC_EXIT
    envelope = {
        "tool": "dyckzeta",
        "version": __version__,
        "config": cfg.to_dict(),
        "result": doc,
    }
    if cfg.format == "json":
        text = json.dumps(_canonical(envelope), indent=2) + "\n"
    else:
        try:
            text = render_csv(cfg.command, doc)
        except _Usage as exc:
            print(f"usage error: {exc}", file=sys.stderr)
            return USAGE_EXIT
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
