"""Verification suites, the job scheduler and the report format.

Every suite is expanded into a list of jobs before anything runs.  Jobs are
pure functions of their parameters; results are concatenated in job order,
so a report does not depend on the number of workers.
"""
from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cutjoin import evolution_residual, verify_npoint_cj_report
from .hurwitz import count_connected, count_disconnected
from .kernel.rational import format_rational
from .partitions import Partition, partitions_upto
from .errors import SizeGuard
from .schur import hurwitz_schur

SCHEMA = "monotone-tr/v1"
SUITES = ("do-karev", "loop-equations", "cutjoin", "evolution", "unstable")
THREADS_ENV = "MONOTONE_TR_THREADS"

CUTJOIN_DEFAULT = ((1, 0, 3), (1, 1, 1), (2, 0, 3), (2, 1, 1))

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "suite", "q", "records", "agree"],
    "properties": {
        "schema": {"const": SCHEMA},
        "suite": {"type": "string"},
        "q": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "agree": {"type": "boolean"},
        "params": {"type": "object"},
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["suite", "q", "g", "method", "value", "agree"],
                "properties": {
                    "suite": {"type": "string"},
                    "q": {"type": "integer"},
                    "g": {"type": ["integer", "null"]},
                    "n": {"type": "integer"},
                    "mu": {"type": "string"},
                    "method": {"type": "string"},
                    "value": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
                    "expected": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
                    "agree": {"type": "boolean"},
                    "wall": {"type": "number"},
                },
            },
        },
    },
}

TABLE_SCHEMA = {
    "type": "object",
    "required": ["schema", "q", "gmax", "mumax", "rows", "agree"],
    "properties": {
        "schema": {"const": SCHEMA},
        "q": {"type": "integer", "minimum": 1},
        "gmax": {"type": "integer", "minimum": 0},
        "mumax": {"type": "integer", "minimum": 1},
        "agree": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["g", "mu", "connected", "disconnected", "brute"],
                "properties": {
                    "g": {"type": "integer"},
                    "mu": {"type": "string"},
                    "connected": {"type": "string"},
                    "disconnected": {"type": "string"},
                    "brute": {"enum": ["agree", "disagree", "skipped", "guarded"]},
                },
            },
        },
    },
}


# -- reports ----------------------------------------------------------------------------------
def _rat(x) -> str:
    return format_rational(x)


def _mu_str(mu) -> str:
    return ",".join(map(str, mu))


@dataclass
class VerificationReport:
    suite: str
    q: list
    params: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    schema: str = SCHEMA

    @property
    def agree(self) -> bool:
        return all(r["agree"] for r in self.records)

    def to_json(self, timings: bool = False) -> dict:
        recs = self.records if timings else [{k: v for k, v in r.items() if k != "wall"} for r in self.records]
        return {
            "schema": self.schema,
            "suite": self.suite,
            "q": list(self.q),
            "params": self.params,
            "agree": self.agree,
            "records": recs,
        }

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), sort_keys=True, indent=1)


# -- workers ----------------------------------------------------------------------------------
def resolve_threads(flag: int | None) -> int:
    """--threads wins over the environment, which wins over the core count."""
    if flag is not None:
        n = flag
    elif os.environ.get(THREADS_ENV):
        n = int(os.environ[THREADS_ENV])
    else:
        n = os.cpu_count() or 1
    if n < 1:
        raise ValueError("worker count must be positive")
    return n


def _timed(job):
    fn, args = job
    t0 = time.perf_counter()
    recs = JOBS[fn](*args)
    wall = time.perf_counter() - t0
    for r in recs:
        r["wall"] = round(wall / max(len(recs), 1), 6)
    return recs


def run_jobs(jobs: list, workers: int) -> list:
    """Run jobs and concatenate their records in job order."""
    if workers <= 1 or len(jobs) <= 1:
        results = [_timed(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
            results = list(ex.map(_timed, jobs))
    return [r for recs in results for r in recs]


# -- job functions (module level so they pickle) ----------------------------------------------------
def _job_do_karev(q: int, g: int, n: int, mumax: int, mutate: bool) -> list:
    from math import prod

    from .tr.expand import expand_in_x
    from .tr.omega import compute_omega

    values = expand_in_x(compute_omega(g, n, q), mumax)
    out = []
    cache: dict = {}
    for i, (mu, val) in enumerate(sorted(values.items())):
        key = Partition(mu)
        if key not in cache:
            cache[key] = hurwitz_schur(g, key, q, True)
        expected = prod(mu) * cache[key]
        if mutate and i == 0:
            # harness fault: the comparison itself must notice a wrong reference
            expected += 1
        out.append({
            "suite": "do-karev", "q": q, "g": g, "n": n, "mu": _mu_str(mu),
            "method": "tr-expansion", "value": _rat(val), "expected": _rat(expected),
            "agree": val == expected,
        })
    return out


def _job_loops(q: int, g: int, n: int, mutate: bool) -> list:
    from .tr.loops import linear_loop_report, quadratic_loop_report

    out = []
    for kind, fn in (("linear", linear_loop_report), ("quadratic", quadratic_loop_report)):
        rep = fn(q, g, n, None, mutate)
        out.append({
            "suite": "loop-equations", "q": q, "g": g, "n": n, "method": f"{kind}-loop",
            "value": str(len(rep.offending)), "expected": "0", "agree": rep.holds,
        })
    return out


def _job_cutjoin(q: int, g: int, n: int, degree: int, convention: str, mutate: bool) -> list:
    # the fault reverses c_g, which every (g, n) instance involves
    rep = verify_npoint_cj_report(q, g, n, degree, convention=convention, flip=g if mutate else None)
    out = []
    for d in range(degree + 1):
        bad = rep.mismatches.get(d, 0)
        out.append({
            "suite": "cutjoin", "q": q, "g": g, "n": n, "method": f"npoint-degree-{d}",
            "value": str(bad), "expected": "0", "agree": bad == 0,
        })
    return out


def _job_evolution(q: int, weight: int, hbar: int, mutate: bool) -> list:
    res = evolution_residual(q, weight, hbar, flip=1 if mutate else None)
    return [{
        "suite": "evolution", "q": q, "g": None, "method": f"dZ/dhbar-JZ W={weight} H={hbar}",
        "value": str(len(res)), "expected": "0", "agree": not res,
    }]


def _job_unstable(q: int, mumax: int, mutate: bool) -> list:
    from .tr.expand import check_unstable

    rep = check_unstable(q, mumax)
    out = []
    for i, (mu, got, exp) in enumerate(rep.disk):
        if mutate and i == 0:
            exp += 1
        out.append({
            "suite": "unstable", "q": q, "g": 0, "n": 1, "mu": str(mu), "method": "ydx",
            "value": _rat(got), "expected": _rat(exp), "agree": got == exp,
        })
    for mu, got, exp in rep.cylinder:
        out.append({
            "suite": "unstable", "q": q, "g": 0, "n": 2, "mu": _mu_str(mu), "method": "bergman",
            "value": _rat(got), "expected": _rat(exp), "agree": got == exp,
        })
    return out


def _job_table_row(q: int, g: int, parts: tuple, brute: bool) -> list:
    mu = Partition(parts)
    conn = hurwitz_schur(g, mu, q, True)
    disc = hurwitz_schur(g, mu, q, False)
    status = "skipped"
    if brute:
        try:
            ok = count_connected(g, mu, q) == conn and count_disconnected(g, mu, q) == disc
            status = "agree" if ok else "disagree"
        except SizeGuard:
            status = "guarded"
    return [{"g": g, "mu": _mu_str(mu.parts), "connected": _rat(conn), "disconnected": _rat(disc), "brute": status}]


JOBS = {
    "do-karev": _job_do_karev,
    "loop-equations": _job_loops,
    "cutjoin": _job_cutjoin,
    "evolution": _job_evolution,
    "unstable": _job_unstable,
    "table-row": _job_table_row,
}


# -- suite expansion ------------------------------------------------------------------------------
@dataclass
class Bounds:
    gmax: int = 1
    nmax: int = 3
    mumax: int = 5
    weight: int = 5
    hbar: int = 3
    degree: int = 6
    level: int = 3  # loop equations for 2g-2+n <= level
    convention: str = "consistent"
    cutjoin_cases: tuple = CUTJOIN_DEFAULT


def suite_jobs(suite: str, qs: list, b: Bounds, mutate: bool = False) -> list:
    jobs = []
    if suite == "do-karev":
        for q in qs:
            for g in range(b.gmax + 1):
                for n in range(1, b.nmax + 1):
                    if 2 * g - 2 + n > 0:
                        jobs.append(("do-karev", (q, g, n, b.mumax, mutate)))
    elif suite == "loop-equations":
        for q in qs:
            for g in range(b.level // 2 + 2):
                for n in range(1, b.level + 3):
                    if 2 * g - 2 + n <= b.level:
                        jobs.append(("loop-equations", (q, g, n, mutate)))
    elif suite == "cutjoin":
        for q, g, n in b.cutjoin_cases:
            if q in qs:
                jobs.append(("cutjoin", (q, g, n, b.degree, b.convention, mutate)))
    elif suite == "evolution":
        for q in qs:
            jobs.append(("evolution", (q, b.weight, b.hbar, mutate)))
    elif suite == "unstable":
        for q in qs:
            jobs.append(("unstable", (q, b.mumax, mutate)))
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return jobs


def run_suite(suite: str, qs: list, bounds: Bounds | None = None, *, mutate: bool = False,
              workers: int = 1) -> VerificationReport:
    bounds = bounds or Bounds()
    names = SUITES if suite == "all" else (suite,)
    jobs = [j for name in names for j in suite_jobs(name, qs, bounds, mutate)]
    params = {k: getattr(bounds, k) for k in ("gmax", "nmax", "mumax", "weight", "hbar", "degree", "level", "convention")}
    params["mutate"] = mutate
    rep = VerificationReport(suite, sorted(qs), params)
    rep.records = run_jobs(jobs, workers)
    return rep


# -- tables ---------------------------------------------------------------------------------------
def table_rows(q: int, gmax: int, mumax: int, sample: float, seed: int, workers: int) -> list:
    rng = random.Random(seed)
    jobs = []
    for mu in partitions_upto(mumax):
        if not mu.parts or mu.size % q:
            continue
        for g in range(gmax + 1):
            jobs.append(("table-row", (q, g, mu.parts, rng.random() < sample)))
    return run_jobs(jobs, workers)


def table_json(q: int, gmax: int, mumax: int, rows: list) -> str:
    rows = [{k: v for k, v in r.items() if k != "wall"} for r in rows]
    doc = {
        "schema": SCHEMA, "q": q, "gmax": gmax, "mumax": mumax,
        "agree": all(r["brute"] != "disagree" for r in rows), "rows": rows,
    }
    return json.dumps(doc, sort_keys=True, indent=1)
