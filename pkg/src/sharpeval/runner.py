"""Execute a validated run configuration and write its reports."""
from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import estimates as est
from .automorphisms import identity, invariance_check, invariance_integrands
from .config import ConfigError, RunConfig, load_config, resolve_points
from .domains import Sampler, contains
from .geometry import PolyExp, as_point
from .measures import pluriharmonicity_residual
from .quadrature import IntegrationPlan, thread_count

CSV_COLUMNS = est.ROW_COLUMNS

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_CONFIG = 0, 1, 2, 64


@dataclass
class RunSummary:
    counts: dict
    wall_time: float
    config_digest: str
    diagnostics: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def exit_status(self) -> int:
        if self.counts.get("fail", 0):
            return EXIT_FAIL
        if self.counts.get("inconclusive", 0):
            return EXIT_INCONCLUSIVE
        return EXIT_PASS


def _seed(cfg: RunConfig, i: int) -> int:
    return int(np.random.SeedSequence([cfg.seed, i]).generate_state(1)[0])


def _functions(cfg, c):
    out = []
    for fid in c.get("functions", []):
        out.extend(cfg.functions[fid])
    return out


def _plan(cfg, c, path):
    from .config import build_plan

    return build_plan(c.get("plan"), f"{path}.plan", cfg.plan)


def _expand(cfg: RunConfig, i: int, c: dict) -> list:
    """Turn one check entry into a list of zero-argument jobs, each returning reports."""
    path = f"$.checks[{i}]"
    t = c["type"]
    seed = _seed(cfg, i)
    s = cfg.spaces.get(c.get("space"))
    plan = _plan(cfg, c, path)
    tol = float(c.get("tol", est.DEFAULT_TOL))
    jobs = []
    if t == "bound":
        pts = resolve_points(c.get("points", {"random": 3}), s, seed, f"{path}.points")
        for f in _functions(cfg, c):
            for z in pts:
                jobs.append(lambda f=f, z=z: [est.pointwise_bound_check(f, s, z, plan=plan, tol=tol)])
    elif t == "sharpness":
        pts = resolve_points(_need_list(c, "points", path), s, seed, f"{path}.points")
        thr = float(c.get("threshold", 1e-3))
        for z in pts:
            jobs.append(lambda z=z: [est.sharpness_check(est.extremal_function(s, z), s, z, thr, plan, tol)])
    elif t == "sup-bound":
        budget = int(c.get("budget", 2000))
        for k, f in enumerate(_functions(cfg, c)):
            jobs.append(lambda f=f, k=k: [est.sup_bound_check(f, s, budget, seed + k, plan, tol)])
    elif t == "delta0":
        fam = _functions(cfg, c)
        if c.get("include_constant", True):
            fam = fam + [PolyExp.constant(1.0, s.n)]
        jobs.append(lambda: [est.delta0_check(s, fam, plan)])
    elif t == "invariance":
        a = cfg.automorphisms[c["automorphism"]]
        m = s.measure if s is not None else None
        if m is None:
            raise ConfigError(f"{path}.space", "invariance needs a space to take the measure from")
        cat = invariance_integrands(m)
        names = c.get("integrands", sorted(cat))
        for j, name in enumerate(names):
            if name not in cat:
                raise ConfigError(f"{path}.integrands[{j}]", f"unknown integrand {name!r}")
        iplan = plan or IntegrationPlan()
        if iplan.method == "monte-carlo":
            iplan = IntegrationPlan("monte-carlo", samples=iplan.samples, seed=seed, tol=iplan.tol)
        for name in names:
            jobs.append(lambda name=name: [_invariance_report(s, a, name, cat[name], iplan)])
    elif t == "pluriharmonicity":
        a = cfg.automorphisms[c["automorphism"]]
        pts = resolve_points(c.get("points", {"random": 3, "radius": 0.5}), s, seed, f"{path}.points")
        h = float(c.get("h", 1e-3))
        thr = float(c.get("tol", 1e-6))
        dirs = np.random.default_rng(seed).normal(size=(len(pts), s.n, 2)) @ np.array([1, 1j])
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        for z, d in zip(pts, dirs):
            jobs.append(lambda z=z, d=d: [_pluri_report(s, a, z, d, h, thr)])
    elif t == "scheme":
        a = cfg.automorphisms[c["automorphism"]] if "automorphism" in c else identity(s.n)
        spec = est.SchemeSpec.holomorphic(s, a)
        for f in _functions(cfg, c):
            u = (lambda f: lambda z: f.log_abs(z))(f)
            jobs.append(lambda u=u, f=f: list(est.scheme_check(spec, u, np.zeros(s.n), a.z0, plan, label=f.label)))
            jobs.append(lambda u=u: [est.scheme_bound_check(spec, u, a.z0, plan=plan)])
    elif t == "integrated":
        Fs = c.get("F", ["identity", "square", "log1p"])
        for j, F in enumerate(Fs):
            if F not in est.MONOTONE_MAPS:
                raise ConfigError(f"{path}.F[{j}]", f"unknown monotone map {F!r}")
        center = resolve_points([_need_obj(c, "center", path)], s, seed, f"{path}.center")[0]
        radius = float(c.get("radius", 0.5))
        if not contains(s.domain, center, radius):
            raise ConfigError(f"{path}.radius", "sub-ball leaves the domain")
        for f in _functions(cfg, c):
            for F in Fs:
                jobs.append(lambda f=f, F=F: [est.integrated_bound_check(f, s, F, center, radius, plan, tol)])
    return jobs


def _need_list(c, key, path):
    if key not in c:
        raise ConfigError(f"{path}.{key}", "missing required field")
    return c[key]


def _need_obj(c, key, path):
    if key not in c:
        raise ConfigError(f"{path}.{key}", "missing required field")
    return c[key]


def _invariance_report(s, a, name, g, plan) -> est.EstimateReport:
    res = invariance_check(a, s.measure, g, plan)
    verdict = "inconclusive" if not math.isfinite(res.tolerance) else ("pass" if res.passed else "fail")
    return est.EstimateReport(
        est.case_id(s, "invariance", repr(a), name),
        "invariance",
        res.lhs,
        res.rhs,
        res.rhs / res.lhs if res.lhs else math.inf,
        res.tolerance,
        verdict,
        point=est._fmt_point(a.z0),
        err_est=res.rel_error,
        method=res.method,
        diagnostics={"integrand": name},
        **est._meta(s),
    )


def _pluri_report(s, a, z, d, h, thr) -> est.EstimateReport:
    w = s.weight
    r = pluriharmonicity_residual(w, a, z, d, h)
    g0 = float(w(z[None])[0] - w(a.apply(z[None]))[0])
    scale = 1.0 + abs(g0)
    return est.EstimateReport(
        est.case_id(s, "pluriharmonicity", est._fmt_point(z), est._fmt_point(d), repr(a)),
        "pluriharmonicity",
        abs(r),
        thr * scale,
        abs(r) / (thr * scale),
        0.0,
        "pass" if abs(r) <= thr * scale else "fail",
        point=est._fmt_point(z),
        err_est=abs(r),
        method="stencil",
        diagnostics={"h": h},
        **est._meta(s),
    )


def run(cfg: RunConfig | dict, seed: int | None = None) -> tuple[RunSummary, list[est.EstimateReport]]:
    """Run every check; returns the summary and the ordered reports."""
    if isinstance(cfg, dict):
        cfg = load_config(cfg, seed)
    t0 = time.perf_counter()
    jobs = []
    for i, c in enumerate(cfg.checks):
        jobs.extend(_expand(cfg, i, c))
    threads = thread_count()
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(threads) as ex:
            chunks = list(ex.map(lambda j: j(), jobs))
    else:
        chunks = [j() for j in jobs]
    reports = [r for chunk in chunks for r in chunk]
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for r in reports:
        counts[r.verdict] += 1
    summary = RunSummary(
        counts,
        time.perf_counter() - t0,
        cfg.digest,
        {"spaces": {k: {"N": v.N if not math.isinf(v.p) else None, "geometry": v.geometry, "n": v.n, "p": v.p}
                    for k, v in cfg.spaces.items()}},
    )
    return summary, reports


def _num(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return _num(obj.item())
    return _num(obj)


def to_json(summary: RunSummary, reports, timestamp: bool = True) -> str:
    doc = {
        "header": {
            "config_digest": summary.config_digest,
            "spaces": summary.diagnostics.get("spaces", {}),
        },
        "summary": {"counts": summary.counts, "total": summary.total, "exit_status": summary.exit_status},
        "reports": [asdict(r) for r in reports],
    }
    if timestamp:
        doc["timing"] = {"timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(), "wall_time": summary.wall_time}
    return json.dumps(_clean(doc), indent=1, sort_keys=True)


def to_csv(summary: RunSummary, reports) -> str:
    buf = io.StringIO()
    buf.write(f"# config_digest={summary.config_digest}\n")
    for k, v in summary.diagnostics.get("spaces", {}).items():
        buf.write(f"# space {k}: N={v['N']!r}\n")
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow({k: _num(v) for k, v in r.row().items()})
    return buf.getvalue()
