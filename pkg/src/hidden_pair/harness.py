"""Experiment runner: seeded trials, JSON-lines reports and per-n summaries."""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable

from .algorithms import (
    DEFAULT_OMEGA,
    GROVER_C,
    algorithm2_success_probability,
    classical_maxip_identify,
    classical_subset_identify,
    grover_allowance,
    lower_bounds,
    maxip_identify,
    resolve_k,
    subset_identify_traced,
)
from .core import MIN_N, HiddenPairInstance, Rng, random_instance, trial_seed
from .matroid import TwoBasesMatroid, identify_bases
from .oracles import MaxIPOracle, SubsetOracle
from .quantum.ball import BallSpec, gaussian_failure_bound, lambda_k

ALGORITHMS = ("maxip", "subset", "classical-maxip", "classical-subset")
RUN_MODES = ("exact", "sampled")
MATROID_KINDS = ("rank", "independence")
OSCILLATION_MAX_N = 2000


@dataclass
class ExperimentConfig:
    algorithm: str
    ns: list[int] = field(default_factory=lambda: [8])
    trials: int = 1000
    omega: int = DEFAULT_OMEGA
    k: int | None = None
    lam: float | None = None
    mode: str = "sampled"
    seed: int = 0
    grover_c: float = GROVER_C
    retries: int = 0
    timing: bool = False
    instances: list[dict] | None = None

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mode not in RUN_MODES:
            raise ValueError(f"mode must be one of {RUN_MODES}")
        if self.omega < 2:
            raise ValueError("omega must be >= 2")
        if self.retries < 0:
            raise ValueError("retries must be >= 0")
        if self.k is not None and self.lam is not None:
            raise ValueError("give --k or --lambda, not both")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.instances:
            for data in self.instances:
                HiddenPairInstance.from_json(data)
        else:
            if not self.ns:
                raise ValueError("no n values given")
            for n in self.ns:
                if n < MIN_N:
                    raise ValueError(f"n must be >= {MIN_N} (n=2 is trivial), got {n}")
        for n in self.sizes():
            if self.k is not None and not 0 <= self.k <= n:
                raise ValueError(f"k={self.k} outside [0, {n}]")

    def sizes(self) -> list[int]:
        if self.instances:
            return sorted({d["n"] if "n" in d else len(d["s"]) for d in self.instances})
        return sorted(set(self.ns))

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> ExperimentConfig:
        return cls(**data)


def _pair_json(pair) -> list[str] | None:
    if pair is None:
        return None
    return sorted(str(x) for x in pair)


def _baseline(algorithm: str, instance: HiddenPairInstance) -> int | None:
    if algorithm == "maxip":
        oracle = MaxIPOracle(instance)
        classical_maxip_identify(oracle)
        return oracle.queries
    if algorithm == "subset":
        oracle = SubsetOracle(instance)
        classical_subset_identify(oracle)
        return oracle.queries
    return None


def run_trial(config: ExperimentConfig, n: int, index: int, instance: HiddenPairInstance | None = None) -> dict:
    """One trial; the report is a plain dict ready for json.dumps."""
    started = time.perf_counter()
    stream = trial_seed(config.seed, index)
    rng = Rng(stream)
    if instance is None:
        instance = random_instance(n, rng)
    algorithm = config.algorithm
    oracle = MaxIPOracle(instance) if algorithm in ("maxip", "classical-maxip") else SubsetOracle(instance)
    pair = None
    nulls = 0
    attempts = 0
    t_hit = None
    for _ in range(config.retries + 1):
        attempts += 1
        if algorithm == "maxip":
            mode = "exact" if config.mode == "exact" else "analytic"
            pair = maxip_identify(oracle, rng, omega=config.omega, mode=mode)
        elif algorithm == "subset":
            pair, t_hat = subset_identify_traced(oracle, rng, k=config.k, lam=config.lam, c=config.grover_c)
            if t_hit is None:
                t_hit = t_hat == instance.join
        elif algorithm == "classical-maxip":
            pair = classical_maxip_identify(oracle)
        else:
            pair = classical_subset_identify(oracle)
        if pair is not None:
            break
        nulls += 1
    report = {
        "trial": index,
        "algorithm": algorithm,
        "n": instance.n,
        "seed": config.seed,
        "stream_seed": stream,
        "rng": Rng.algorithm,
        "instance": instance.to_json(),
        "ledger": oracle.ledger.to_json(),
        "output": _pair_json(pair),
        "success": pair is not None and pair == instance.pair,
        "attempts": attempts,
        "nulls": nulls,
        "t_hit": t_hit,
        "baseline_queries": _baseline(algorithm, instance),
        "config": config.to_json(),
    }
    if config.timing:
        report["wall_time"] = time.perf_counter() - started
    return report


def _tasks(config: ExperimentConfig) -> list[tuple[int, int, dict | None]]:
    if config.instances:
        return [
            (HiddenPairInstance.from_json(config.instances[i % len(config.instances)]).n, i,
             config.instances[i % len(config.instances)])
            for i in range(config.trials)
        ]
    return [(n, i, None) for n in config.sizes() for i in range(config.trials)]


def _run_task(args) -> dict:
    config_json, n, index, inst_json = args
    config = ExperimentConfig.from_json(config_json)
    instance = HiddenPairInstance.from_json(inst_json) if inst_json is not None else None
    return run_trial(config, n, index, instance)


def iter_reports(config: ExperimentConfig, workers: int = 1) -> Iterable[dict]:
    """Reports in (n, trial index) order regardless of worker completion order."""
    config.validate()
    payload = [(config.to_json(), n, i, inst) for n, i, inst in _tasks(config)]
    if workers <= 1:
        for args in payload:
            yield _run_task(args)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_run_task, payload, chunksize=max(1, len(payload) // (8 * workers)))


def report_line(report: dict) -> str:
    return json.dumps(report, separators=(",", ":"))


def replay_report(report: dict) -> dict:
    """Re-run the trial described by a report from its embedded config and seed."""
    config = ExperimentConfig.from_json(report["config"])
    instance = None
    if config.instances:
        instance = HiddenPairInstance.from_json(report["instance"])
    return run_trial(config, report["n"], report["trial"], instance)


def exact_success(config: ExperimentConfig, n: int) -> Fraction | None:
    if config.algorithm.startswith("classical"):
        return Fraction(1)
    if config.algorithm == "maxip":
        p = algorithm2_success_probability(config.omega)
        return 1 - (1 - p) ** (config.retries + 1)
    return None


def summarize(config: ExperimentConfig, reports: Iterable[dict]) -> list[dict]:
    groups: dict[int, list[dict]] = {}
    for r in reports:
        groups.setdefault(r["n"], []).append(r)
    rows = []
    for n in sorted(groups):
        rs = groups[n]
        trials = len(rs)
        successes = sum(r["success"] for r in rs)
        rate = successes / trials
        queries = [r["ledger"]["total"] for r in rs]
        bounds = lower_bounds(n)
        p_exact = exact_success(config, n)
        row = {
            "algorithm": config.algorithm,
            "n": n,
            "trials": trials,
            "successes": successes,
            "success_rate": rate,
            "stderr": math.sqrt(rate * (1 - rate) / trials),
            "nulls": sum(r["nulls"] for r in rs),
            "mean_queries": sum(queries) / trials,
            "max_queries": max(queries),
            "p_success_exact": None if p_exact is None else float(p_exact),
            "p_success_exact_ratio": None if p_exact is None else f"{p_exact.numerator}/{p_exact.denominator}",
            "N": bounds.N,
            "C_i": bounds.C_i,
            "C_s": bounds.C_s,
        }
        if config.algorithm == "subset":
            k = resolve_k(n, config.k, config.lam)
            spec = BallSpec(n, k)
            hits = [r["t_hit"] for r in rs]
            row["k"] = k
            row["t_hit_rate"] = sum(hits) / trials
            row["p_t_exact"] = float(spec.hit_probability())
            row["query_cap"] = k + grover_allowance(n, config.grover_c)
        baseline = [r["baseline_queries"] for r in rs if r["baseline_queries"] is not None]
        row["mean_baseline_queries"] = sum(baseline) / len(baseline) if baseline else None
        rows.append(row)
    return rows


def run_experiment(config: ExperimentConfig, workers: int = 1) -> tuple[list[dict], list[dict]]:
    reports = list(iter_reports(config, workers))
    return reports, summarize(config, reports)


def run_matroid(
    matroid: TwoBasesMatroid,
    kind: str,
    trials: int,
    seed: int,
    omega: int = DEFAULT_OMEGA,
    mode: str = "analytic",
    grover_c: float = GROVER_C,
) -> tuple[list[dict], dict]:
    if kind not in MATROID_KINDS:
        raise ValueError(f"oracle kind must be one of {MATROID_KINDS}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    reports = []
    for i in range(trials):
        stream = trial_seed(seed, i)
        options = {} if kind == "rank" else {"c": grover_c}
        result = identify_bases(matroid, kind, Rng(stream), omega=omega, mode=mode, **options)
        output = None if result.bases is None else sorted(sorted(b) for b in result.bases)
        reports.append({
            "trial": i,
            "kind": kind,
            "seed": seed,
            "stream_seed": stream,
            "matroid": matroid.to_json(),
            "ledger": result.ledger.to_json(),
            "output": output,
            "success": result.bases == matroid.bases,
        })
    successes = sum(r["success"] for r in reports)
    rate = successes / trials
    summary = {
        "kind": kind,
        "n": matroid.n,
        "trials": trials,
        "successes": successes,
        "success_rate": rate,
        "stderr": math.sqrt(rate * (1 - rate) / trials),
        "mean_queries": sum(r["ledger"]["total"] for r in reports) / trials,
    }
    return reports, summary


def oscillation_rows(n_min: int, n_max: int, lam: float | None = None) -> list[dict]:
    """Exact Pr(tau = t) = M_k / 2^n for every n in range, k = floor(n/2 + lam sqrt(n)).

    Binomial rows are advanced by Pascal's rule so the sweep stays cheap.
    """
    if not MIN_N <= n_min <= n_max <= OSCILLATION_MAX_N:
        raise ValueError(f"need {MIN_N} <= n_min <= n_max <= {OSCILLATION_MAX_N}")
    lam_value = 1 if lam is None else lam
    row = [1]
    rows = []
    for n in range(1, n_max + 1):
        row = [1] + [row[i - 1] + row[i] for i in range(1, n)] + [1]
        if n < n_min:
            continue
        k = lambda_k(n, lam_value)
        m_k = sum(row[: k + 1])
        p = Fraction(m_k, 1 << n)
        entry = {"n": n, "k": k, "p_exact": float(p)}
        if lam is not None:
            entry["failure_bound"] = gaussian_failure_bound(float(lam))
        rows.append(entry)
    return rows


def bounds_rows(ns: Iterable[int], omega: int = DEFAULT_OMEGA, grover_c: float = GROVER_C) -> list[dict]:
    rows = []
    for n in ns:
        b = lower_bounds(n)
        k = resolve_k(n)
        rows.append({
            "n": n,
            "N": b.N,
            "log2_N": math.log2(b.N),
            "C_i": b.C_i,
            "C_s": b.C_s,
            "quantum_maxip": omega,
            "quantum_subset": k + grover_allowance(n, grover_c),
            "k": k,
        })
    return rows
