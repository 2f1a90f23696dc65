"""Experiment orchestration and the command-line entry point.

Per-trial randomness flows from hash(base seed, family, n, trial); the
retention probability never enters the seed, so for a fixed trial the
sparsifications are nested across p and success indicators are monotone.
That monotonicity is what the threshold bisection relies on.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import generators
from .exact_factors import (BudgetExceeded, SearchBudget,
                            count_triangle_factors, find_clique_factor,
                            find_triangle_factor)
from .generators import FamilySpec, build
from .graph_core import (Graph, TripartiteGraph, format_graph, read_graph,
                         write_graph)
from .hsz_check import verify_hsz
from .rng import STREAM_TRIAL, mix_keys
from .sparsify import SparsifyParams, sparsify, split_rounds

THRESHOLD_CSV_HEADER = "family,n,p,trials,successes,mean_runtime_ms"
COUNTS_CSV_HEADER = "n,q,trials,mean_count,formula,stderr"


@dataclass
class ExperimentConfig:
    family: str
    ns: list[int]
    ps: list[float] = field(default_factory=list)
    trials: int = 100
    seed: int = 0
    d: float = 0.8
    q: float = 1.0
    tau: float = 0.0
    target: float = 0.5
    node_cap: Optional[int] = 50_000_000
    time_limit: Optional[float] = 10.0
    emit_runtime: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if any(not 0 <= p <= 1 for p in self.ps):
            raise ValueError("p values must lie in [0,1]")


@dataclass
class TrialRecord:
    n: int
    p: float
    trial: int
    seed: int
    outcome: str          # "success" | "failure" | "timeout"
    runtime_ms: float


@dataclass
class ThresholdResult:
    rows: list = field(default_factory=list)
    records: list = field(default_factory=list)
    p_star: Optional[float] = None
    c_star: Optional[float] = None


def _family_key(family: str) -> int:
    h = 0
    for ch in family.encode():
        h = mix_keys(h, ch)
    return h


def trial_seed(base_seed: int, family: str, n: int, trial: int) -> int:
    return mix_keys(base_seed, STREAM_TRIAL, _family_key(family), n, trial)


def _build_host(cfg: ExperimentConfig, n: int, gen_seed: int) -> Graph:
    spec = FamilySpec(cfg.family, n, d=cfg.d, q=cfg.q, tau=cfg.tau,
                      seed=gen_seed)
    return build(spec)


def _run_trial(cfg: ExperimentConfig, n: int, p: float, trial: int
               ) -> TrialRecord:
    ts = trial_seed(cfg.seed, cfg.family, n, trial)
    host = _build_host(cfg, n, mix_keys(ts, 1))
    gp = sparsify(host, SparsifyParams(p, mix_keys(ts, 2)))
    budget = SearchBudget(node_cap=cfg.node_cap, time_limit=cfg.time_limit)
    start = time.perf_counter()
    try:
        found = find_triangle_factor(gp, budget=budget)
        outcome = "success" if found is not None else "failure"
    except BudgetExceeded:
        outcome = "timeout"
    ms = (time.perf_counter() - start) * 1000.0
    return TrialRecord(n, p, trial, ts, outcome, ms)


def threshold_sweep(cfg: ExperimentConfig) -> ThresholdResult:
    """Success rates over the (n, p) grid; timeouts excluded with warning."""
    result = ThresholdResult()
    for n in cfg.ns:
        for p in cfg.ps:
            recs = [_run_trial(cfg, n, p, t) for t in range(cfg.trials)]
            result.records += recs
            timeouts = sum(r.outcome == "timeout" for r in recs)
            if timeouts:
                warnings.warn(
                    f"{timeouts}/{cfg.trials} trials timed out at "
                    f"(n={n}, p={p}); excluded from the rate", stacklevel=2)
            successes = sum(r.outcome == "success" for r in recs)
            mean_ms = sum(r.runtime_ms for r in recs) / len(recs)
            result.rows.append({
                "family": cfg.family, "n": n, "p": p,
                "trials": cfg.trials - timeouts, "successes": successes,
                "mean_runtime_ms": mean_ms if cfg.emit_runtime else 0.0,
            })
    result.rows.sort(key=lambda r: (r["n"], r["p"]))
    return result


def total_vertices(family: str, n: int) -> int:
    """Vertex count of the built graph (3n for tripartite families)."""
    if family in ("complete_tripartite", "superreg_tripartite"):
        return 3 * n
    return n


def normalized_constant(family: str, n: int, p: float) -> float:
    """C* = p * m^(2/3) * (log m)^(-1/3) with m the total vertex count."""
    m = total_vertices(family, n)
    return p * m ** (2.0 / 3.0) / (math.log(m)) ** (1.0 / 3.0)


def estimate_threshold(cfg: ExperimentConfig, n: int,
                       resolution: float = 2.0 ** -10
                       ) -> ThresholdResult:
    """Bisection for the p where the success rate crosses cfg.target.

    Requires the monotone coupling: per trial the outcome is a step
    function of p, so the empirical rate is nondecreasing.  The trial set
    is fixed across probe points.
    """
    memo: dict[tuple[int, float], bool] = {}

    def success(trial: int, p: float) -> bool:
        key = (trial, p)
        if key not in memo:
            rec = _run_trial(cfg, n, p, trial)
            if rec.outcome == "timeout":
                raise BudgetExceeded(
                    f"trial {trial} at p={p} exceeded the budget during "
                    "threshold estimation")
            memo[key] = rec.outcome == "success"
        return memo[key]

    def rate(p: float) -> float:
        return sum(success(t, p) for t in range(cfg.trials)) / cfg.trials

    result = ThresholdResult()
    if rate(1.0) < cfg.target:
        raise ValueError(
            f"success rate at p=1 is below the target {cfg.target}; "
            "threshold is not bracketable")
    lo, hi = 0.0, 1.0
    while hi - lo > resolution:
        mid = (lo + hi) / 2.0
        if rate(mid) >= cfg.target:
            hi = mid
        else:
            lo = mid
    result.p_star = hi
    result.c_star = normalized_constant(cfg.family, n, hi)
    return result


@dataclass
class CountReport:
    n: int
    q: float
    trials: int
    mean_count: float
    formula: float
    stderr: float
    markov_consistent: bool  # fraction with T >= 1 is at most the mean


def expected_factor_count(n: int, q: float) -> float:
    """q^n * n! / ((n/3)! * 6^(n/3)), the expected count in G(n, q)."""
    if n % 3:
        raise ValueError("n must be divisible by 3")
    return (q ** n * math.factorial(n)
            / (math.factorial(n // 3) * 6.0 ** (n // 3)))


def factor_count_experiment(n: int, q: float, trials: int, seed: int
                            ) -> CountReport:
    """Empirical mean of the exact factor count on G(n, q) samples
    against the closed-form expectation."""
    counts = []
    for t in range(trials):
        ts = trial_seed(seed, "gnq", n, t)
        g = generators.gnq(n, q, ts)
        counts.append(count_triangle_factors(g).value)
    mean = sum(counts) / trials
    var = sum((c - mean) ** 2 for c in counts) / max(1, trials - 1)
    stderr = math.sqrt(var / trials)
    frac_positive = sum(1 for c in counts if c >= 1) / trials
    return CountReport(n, q, trials, mean, expected_factor_count(n, q),
                       stderr, frac_positive <= mean + 1e-12)


# -- persistence ----------------------------------------------------------


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def threshold_csv(result: ThresholdResult) -> str:
    lines = [THRESHOLD_CSV_HEADER]
    for r in result.rows:
        lines.append(f"{r['family']},{r['n']},{r['p']:.6f},{r['trials']},"
                     f"{r['successes']},{r['mean_runtime_ms']:.3f}")
    return "\n".join(lines) + "\n"


def counts_csv(reports: Sequence[CountReport]) -> str:
    lines = [COUNTS_CSV_HEADER]
    for r in reports:
        lines.append(f"{r.n},{r.q:.6f},{r.trials},{r.mean_count:.6f},"
                     f"{r.formula:.6f},{r.stderr:.6f}")
    return "\n".join(lines) + "\n"


# -- config files ----------------------------------------------------------


class ConfigError(Exception):
    pass


def parse_config(text: str) -> list[tuple[str, dict]]:
    """Line-oriented `key = value` sections under [name] headers."""
    sections: list[tuple[str, dict]] = []
    current: Optional[dict] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = {}
            sections.append((line[1:-1].strip(), current))
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        if current is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, _, value = line.partition("=")
        current[key.strip()] = value.strip()
    return sections


def _cfg_from_section(name: str, sec: dict) -> tuple[str, ExperimentConfig, str]:
    kind = sec.get("kind", "threshold")
    if kind not in ("threshold", "estimate", "counts"):
        raise ConfigError(f"[{name}]: unknown kind {kind!r}")
    family = sec.get("family", "superreg_tripartite")
    if kind != "counts" and family not in generators.FAMILIES:
        raise ConfigError(f"[{name}]: unknown family {family!r}")
    out = sec.get("out")
    if not out:
        raise ConfigError(f"[{name}]: missing out = <path>")
    try:
        cfg = ExperimentConfig(
            family=family,
            ns=[int(x) for x in sec.get("n", "").split()],
            ps=[float(x) for x in sec.get("p", "").split()],
            trials=int(sec.get("trials", "100")),
            seed=int(sec.get("seed", "0")),
            d=float(sec.get("d", "0.8")),
            q=float(sec.get("q", "1.0")),
            tau=float(sec.get("tau", "0.0")),
            target=float(sec.get("target", "0.5")),
            node_cap=(int(sec["node_cap"]) if "node_cap" in sec else 50_000_000),
            time_limit=(float(sec["time_limit"]) if "time_limit" in sec
                        else None if sec.get("node_cap") else 10.0),
            emit_runtime=sec.get("emit_runtime", "true").lower() != "false",
        )
    except ValueError as exc:
        raise ConfigError(f"[{name}]: {exc}") from exc
    if not cfg.ns:
        raise ConfigError(f"[{name}]: missing n = <list>")
    return kind, cfg, out


def run(config_path: str) -> int:
    """Dispatch the experiments in a config file; nonzero on any error."""
    try:
        with open(config_path, "r", encoding="utf-8") as fh:
            sections = parse_config(fh.read())
    except (OSError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    for name, sec in sections:
        try:
            kind, cfg, out = _cfg_from_section(name, sec)
        except ConfigError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
        try:
            if kind == "threshold":
                result = threshold_sweep(cfg)
                _atomic_write(out, threshold_csv(result))
            elif kind == "estimate":
                rows = []
                for n in cfg.ns:
                    est = estimate_threshold(cfg, n)
                    rows.append({"family": cfg.family, "n": n,
                                 "p_star": est.p_star, "c_star": est.c_star})
                payload = {"schema": 1, "kind": "estimate", "results": rows}
                _atomic_write(out, json.dumps(payload, indent=2) + "\n")
            else:
                reports = [factor_count_experiment(n, cfg.q, cfg.trials,
                                                   cfg.seed)
                           for n in cfg.ns]
                _atomic_write(out, counts_csv(reports))
        except (ValueError, BudgetExceeded) as exc:
            print(f"[{name}] failed: {exc}", file=sys.stderr)
            return 1
        print(f"[{name}] wrote {out}")
    return 0


# -- CLI -------------------------------------------------------------------


def _add_common_graph_arg(sp):
    sp.add_argument("--in", dest="infile", required=True,
                    help="graph file in the text format")


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = argparse.ArgumentParser(
        prog="trifactor",
        description="triangle factors in dense graphs and their "
                    "random sparsifications")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("generate", help="write a benchmark family graph")
    g.add_argument("--family", required=True, choices=generators.FAMILIES)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--n2", type=int)
    g.add_argument("--n3", type=int)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--d", type=float, default=0.8)
    g.add_argument("--q", type=float, default=0.5)
    g.add_argument("--tau", type=float, default=0.0)
    g.add_argument("--mode", default="two", choices=["one", "two"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    s = sub.add_parser("sparsify", help="seeded random sparsification")
    _add_common_graph_arg(s)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--rounds", type=int, default=1)
    s.add_argument("--out", required=True)

    so = sub.add_parser("solve", help="exact factor search")
    _add_common_graph_arg(so)
    so.add_argument("--count", action="store_true")
    so.add_argument("--k", type=int, default=3)

    co = sub.add_parser("count", help="exact triangle factor count")
    _add_common_graph_arg(co)

    lp = sub.add_parser("lp", help="packing/covering LP and integer weights")
    _add_common_graph_arg(lp)
    lp.add_argument("--k", type=int, default=3)
    lp.add_argument("--demand", help="file of `vertex value` lines")
    lp.add_argument("--integer", action="store_true")
    lp.add_argument("--dump", action="store_true",
                    help="print clique weights")

    hz = sub.add_parser("hsz", help="Hajnal-Szemeredi matching check")
    _add_common_graph_arg(hz)
    hz.add_argument("--k", type=int, default=3)

    ma = sub.add_parser("match", help="randomized matching algorithms")
    _add_common_graph_arg(ma)
    ma.add_argument("--algo", required=True,
                    choices=["greedy", "vtxcover", "matchcover", "help"])
    ma.add_argument("--p", type=float, default=1.0)
    ma.add_argument("--seed", type=int, default=0)
    ma.add_argument("--mu", type=float, default=0.05)
    ma.add_argument("--scenario", help="scenario file (see docs)")

    rg = sub.add_parser("reg", help="regularity checks")
    _add_common_graph_arg(rg)
    rg.add_argument("--parts", required=True,
                    help="file with one whitespace-separated part per line")
    rg.add_argument("--check", required=True,
                    choices=["regular", "super", "triangles", "exactdensity"])
    rg.add_argument("--eps", type=float, default=0.1)
    rg.add_argument("--d", type=float)
    rg.add_argument("--delta", type=float)
    rg.add_argument("--mode", default="sampled", choices=["exact", "sampled"])
    rg.add_argument("--samples", type=int, default=500)
    rg.add_argument("--seed", type=int, default=0)
    rg.add_argument("--densities", nargs=3, type=float,
                    metavar=("D12", "D13", "D23"))
    rg.add_argument("--out", help="exactdensity: write the subgraph here")

    dg = sub.add_parser("diag", help="entropy / concentration diagnostics")
    _add_common_graph_arg(dg)
    dg.add_argument("--check", required=True,
                    choices=["entropy", "ldl", "concentration"])
    dg.add_argument("--t", type=int, default=0)
    dg.add_argument("--avoid", type=int, nargs="*", default=[])
    dg.add_argument("--u", type=int)
    dg.add_argument("--p", type=float, default=1.0)
    dg.add_argument("--d", type=float, default=1.0)
    dg.add_argument("--beta", type=float, default=0.1)
    dg.add_argument("--epsp", type=float, default=0.1)
    dg.add_argument("--samples", type=int, default=20)
    dg.add_argument("--seed", type=int, default=0)
    dg.add_argument("--out", help="write the JSON report here")

    th = sub.add_parser("threshold", help="bisection threshold estimate")
    th.add_argument("--family", default="superreg_tripartite",
                    choices=generators.FAMILIES)
    th.add_argument("--n", type=int, nargs="+", required=True)
    th.add_argument("--trials", type=int, default=200)
    th.add_argument("--target", type=float, default=0.5)
    th.add_argument("--d", type=float, default=0.8)
    th.add_argument("--seed", type=int, default=0)

    rn = sub.add_parser("run", help="run experiments from a config file")
    rn.add_argument("config")

    args = ap.parse_args(argv)
    return _dispatch(args)


def _dispatch(args) -> int:
    if args.cmd == "generate":
        extra = ()
        if args.family == "complete_tripartite" and args.n2 is not None:
            extra = (args.n, args.n2, args.n3 if args.n3 is not None else args.n2)
        spec = FamilySpec(args.family, args.n, k=args.k, d=args.d, q=args.q,
                          tau=args.tau, mode=args.mode, seed=args.seed,
                          extra_sizes=extra)
        write_graph(build(spec), args.out)
        return 0

    if args.cmd == "sparsify":
        g = read_graph(args.infile)
        if args.rounds == 1:
            write_graph(sparsify(g, SparsifyParams(args.p, args.seed)),
                        args.out)
        else:
            for r, gr in enumerate(split_rounds(g, args.p, args.rounds,
                                                args.seed)):
                write_graph(gr, f"{args.out}.{r}")
        return 0

    if args.cmd == "solve":
        g = read_graph(args.infile)
        if args.count:
            if args.k != 3:
                print("counting supports k=3 only", file=sys.stderr)
                return 2
            print(count_triangle_factors(g).value)
            return 0
        if args.k == 3:
            m = find_triangle_factor(g)
            witness = m.sorted_triangles() if m else None
        else:
            witness = find_clique_factor(g, args.k)
        if witness is None:
            print("NONE")
            return 1
        print("FACTOR")
        for t in witness:
            print(" ".join(str(v) for v in t))
        return 0

    if args.cmd == "count":
        print(count_triangle_factors(read_graph(args.infile)).value)
        return 0

    if args.cmd == "lp":
        return _cmd_lp(args)

    if args.cmd == "hsz":
        rep = verify_hsz(read_graph(args.infile), args.k)
        print(f"n={rep.n} k={rep.k} delta={rep.min_degree} x={rep.x} "
              f"bound={rep.bound} matching={rep.matching_size} "
              f"{'PASS' if rep.passed else 'FAIL'}")
        return 0 if rep.passed else 1

    if args.cmd == "match":
        return _cmd_match(args)

    if args.cmd == "reg":
        return _cmd_reg(args)

    if args.cmd == "diag":
        return _cmd_diag(args)

    if args.cmd == "threshold":
        cfg = ExperimentConfig(family=args.family, ns=list(args.n),
                               trials=args.trials, seed=args.seed, d=args.d,
                               target=args.target, node_cap=None,
                               time_limit=None)
        for n in args.n:
            est = estimate_threshold(cfg, n)
            print(f"n={n} p*={est.p_star:.6f} C*={est.c_star:.4f}")
        return 0

    if args.cmd == "run":
        return run(args.config)

    return 2


def _cmd_lp(args) -> int:
    from .lp_fractional import (CorrectionStuck, integer_clique_weights,
                                solve_covering_lp, solve_packing_lp)

    g = read_graph(args.infile)
    demand = None
    if args.demand:
        demand = {}
        with open(args.demand, "r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    v, val = line.split()
                    demand[int(v)] = int(val)
    if args.integer:
        lam = [demand.get(v, 1) if demand else 1 for v in range(g.n)]
        try:
            res = integer_clique_weights(g, args.k, lam)
        except (ValueError, CorrectionStuck) as exc:
            print(f"FAILED: {exc}", file=sys.stderr)
            return 1
        print(f"steps={len(res.steps)}")
        if args.dump:
            for q, w in sorted(res.weights.items()):
                print(" ".join(str(v) for v in q), w)
        return 0
    pack = solve_packing_lp(g, args.k, demand)
    cover = solve_covering_lp(g, args.k)
    print(f"packing={pack.value:.9f} covering={cover.value:.9f} "
          f"gap={abs(pack.value - cover.value):.2e} tight={pack.tight}")
    if args.dump and pack.weighting:
        for q, w in sorted(pack.weighting.items()):
            print(" ".join(str(v) for v in q), f"{w:.6f}")
    return 0


def _parse_scenario(path: str) -> dict:
    out = {"specials": [], "quotas": [], "sets": {}, "edges": [],
           "edges2": [], "counts": [], "mode": "i", "targets": {}}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tok = line.split()
            key, rest = tok[0], tok[1:]
            if key == "special":
                v = int(rest[0])
                pairs = [int(x) for x in rest[1:]]
                if len(pairs) % 2:
                    raise ConfigError(f"line {lineno}: odd pair list")
                menu = list(zip(pairs[::2], pairs[1::2]))
                out["specials"].append((v, menu))
            elif key == "quota":
                out["quotas"].append([int(x) for x in rest])
            elif key in ("set1", "set2", "set3"):
                out["sets"][key] = [int(x) for x in rest]
            elif key == "edge":
                out["edges"].append((int(rest[0]), int(rest[1])))
            elif key == "edge2":
                out["edges2"].append((int(rest[0]), int(rest[1])))
            elif key == "target":
                e = (int(rest[0]), int(rest[1]))
                out["targets"][e] = [int(x) for x in rest[2:]]
            elif key == "counts":
                out["counts"] = [int(x) for x in rest]
            elif key == "mode":
                out["mode"] = rest[0]
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return out


def _cmd_match(args) -> int:
    from .rand_matching import (cover_special_vertices, greedy_triangle_matching,
                                match_cover, match_cover_help)

    g = read_graph(args.infile)
    if args.algo == "greedy":
        parts = None
        if isinstance(g, TripartiteGraph):
            parts = [g.part(i) for i in range(3)]
        gp = sparsify(g, SparsifyParams(args.p, args.seed))
        m = greedy_triangle_matching(gp, parts)
        print(f"size={m.size}")
        for t in m.sorted_triangles():
            print(" ".join(str(v) for v in t))
        return 0
    if not args.scenario:
        print("this algorithm needs --scenario", file=sys.stderr)
        return 2
    sc = _parse_scenario(args.scenario)
    if args.algo == "vtxcover":
        res = cover_special_vertices(g, args.p, sc["specials"], sc["quotas"],
                                     args.mu, args.seed)
        if res is None:
            print("NONE")
            return 1
        print(f"size={res.matching.size} quota_usage={res.quota_usage}")
        return 0
    if args.algo == "help":
        res = match_cover_help(g, args.p, sc["edges"], sc["targets"],
                               args.mu, args.seed)
        print(f"size={res.matching.size}")
        return 0
    counts = sc["counts"]
    if sc["mode"] == "i":
        res = match_cover(g, args.p, "i", args.mu, args.seed,
                          x1=sc["sets"]["set1"], x2=sc["sets"]["set2"],
                          x3=sc["sets"].get("set3", ()), edges=sc["edges"],
                          n2=counts[0], n3=counts[1])
    else:
        res = match_cover(g, args.p, "ii", args.mu, args.seed,
                          x1=sc["sets"]["set1"], x2=sc["sets"]["set2"],
                          edges=sc["edges"], edges2=sc["edges2"],
                          n1=counts[0], n2=counts[1])
    if res is None:
        print("NONE")
        return 1
    print(f"size={res.matching.size}")
    return 0


def _read_parts(path: str) -> list[list[int]]:
    parts = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                parts.append([int(x) for x in line.split()])
    return parts


def _cmd_reg(args) -> int:
    from .regularity import (check_regular_pair, check_super_regular,
                             exact_density_subgraph, triangle_estimate)

    g = read_graph(args.infile)
    parts = _read_parts(args.parts)
    if args.check == "regular":
        v = check_regular_pair(g, parts[0], parts[1], args.eps,
                               mode=args.mode, samples=args.samples,
                               seed=args.seed)
        print(f"pass={v.passed} density={v.density:.6f} mode={v.mode}")
        return 0 if v.passed else 1
    if args.check == "super":
        v = check_super_regular(g, parts[0], parts[1], args.eps, d=args.d,
                                delta=args.delta, mode=args.mode,
                                samples=args.samples, seed=args.seed)
        print(f"pass={v.passed} density={v.density:.6f} "
              f"mindeg={v.delta:.6f} mode={v.mode}")
        return 0 if v.passed else 1
    if args.check == "triangles":
        dens = tuple(args.densities) if args.densities else (args.d,) * 3
        pred, actual, ok = triangle_estimate(g, parts[0], parts[1], parts[2],
                                             dens, args.eps)
        print(f"pass={ok} predicted={pred:.1f} actual={actual}")
        return 0 if ok else 1
    sub = exact_density_subgraph(g, parts[0], parts[1], args.d, args.eps,
                                 args.seed)
    print(f"edges={sub.edge_count()}")
    if args.out:
        write_graph(sub, args.out)
    return 0


def _cmd_diag(args) -> int:
    from .diagnostics import concentration_check, entropy_profile, ldl_profile

    g = read_graph(args.infile)
    if not isinstance(g, TripartiteGraph):
        print("diagnostics need a tripartite graph", file=sys.stderr)
        return 2
    if args.check == "entropy":
        rep = entropy_profile(g, args.t, args.avoid, args.u, args.beta,
                              args.epsp, args.p, args.d)
        payload = {
            "schema": 1, "kind": "entropy", "benchmark": rep.benchmark,
            "beta": rep.beta, "eps_prime": rep.eps_prime,
            "empty": rep.empty,
            "entropies": {str(v): h for v, h in rep.entropies.items()},
            "lower_fraction": rep.lower_fraction,
            "upper_fraction": rep.upper_fraction,
        }
    elif args.check == "ldl":
        rep = ldl_profile(g, args.t, args.avoid, args.d)
        payload = {
            "schema": 1, "kind": "ldl", "floor": rep.floor,
            "ratios": {str(v): r for v, r in rep.ratios.items()},
            "passing_fraction": rep.passing_fraction,
            "identity_holds": rep.identity_holds,
        }
    else:
        rep = concentration_check(g, args.d, args.p, args.epsp,
                                  subset_samples=args.samples,
                                  seed=args.seed)
        def clause(c):
            return {"predicted": c.predicted, "observed": c.observed,
                    "tolerance": c.tolerance, "passed": c.passed,
                    "exceptional": c.exceptional}
        payload = {
            "schema": 1, "kind": "concentration",
            "subsets": clause(rep.subsets),
            "per_vertex": clause(rep.per_vertex),
            "global_cap": clause(rep.global_cap),
            "passed": rep.passed,
        }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        _atomic_write(args.out, text)
    else:
        print(text, end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
