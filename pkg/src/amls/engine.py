"""Approximate local search over abstract monotone set systems.

A monotone instance is a universe [n) plus a membership predicate over
subsets, closed under supersets and containing the full universe.  An
extension oracle, given (X, budget), returns Y with X u Y a member and
|Y| <= alpha * budget whenever some S with |S| <= budget and S u X a member
exists; it declares its ratio alpha, running-time base c, and success
probability.

Three solving modes, all returning a RunReport whose solution is always a
member of the family:

  run_randomized      sample a uniform t-subset X, extend with the oracle,
                      keep the best of ceil(boost / p) repetitions per
                      target size k, for k = 0 .. floor(n/alpha); the sample
                      size t per k minimizes c^(k-t/alpha) / p(n,k,t) where
                      p is the exact hypergeometric success probability.
                      Returns a solution of size <= alpha * OPT with
                      probability >= 1 - exp(-boost * success_prob).
  run_deterministic   replace sampling with iteration over a weak
                      (n, k, t, ceil(t/alpha))-set-intersection family, with
                      t minimizing kappa(n,k,t,ceil(t/alpha)) * c^(k-t/alpha);
                      unconditional alpha-approximation, gated by the family
                      construction limit.
  brute_force_search  no oracle at all: for each k test every member of an
                      (n, floor(alpha*k), k)-covering; unconditional
                      alpha-approximation by monotonicity.

Reproducibility: worker w of the iteration for target size k draws from a
generator seeded with the string "seed:k:w", so identical (instance, oracle,
RunConfig) produce bit-identical reports.  Repetitions are split across
parallel_workers; each worker stops its own chunk at its first qualifying
hit, and the merged result is the (size, lexicographic) minimum, which makes
the outcome independent of thread scheduling.  membership and extend must
tolerate concurrent calls.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional

from .combinatorics import exact_ratio, kappa, select_t
from .families import LimitExceededError, build_covering, build_intersection_family

__all__ = [
    "MonotoneInstance",
    "ExtensionOracle",
    "RunConfig",
    "RunReport",
    "sample_once",
    "run_randomized",
    "run_deterministic",
    "brute_force_search",
    "solve",
    "success_rate",
    "exhaustive_minimum",
]

Subset = frozenset


@dataclass(frozen=True)
class MonotoneInstance:
    """Universe size plus a membership test; label is for reports only.

    membership must be monotone (S a member implies every superset is) and
    true on the full universe.  The engine assumes this; problem plugins are
    spot-checked by their own tests.
    """

    n: int
    membership: Callable[[frozenset], bool]
    label: str = "instance"


@dataclass(frozen=True)
class ExtensionOracle:
    """A parameterized approximate extension algorithm with declared (alpha, c).

    Contract: if some S with S u X a member and |S| <= k exists, extend(X, k,
    rng) returns, with probability at least success_prob, a set Y with
    Y u X a member and |Y| <= alpha * k.  Returning None signals failure.
    """

    alpha: float
    c: float
    success_prob: float
    extend: Callable[[frozenset, int, random.Random], Optional[frozenset]]
    name: str = "oracle"

    def __post_init__(self) -> None:
        if not float(self.alpha) >= 1.0:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if not float(self.c) >= 1.0:
            raise ValueError(f"c must be >= 1, got {self.c}")
        if not 0.0 < self.success_prob <= 1.0:
            raise ValueError(f"success_prob must be in (0, 1], got {self.success_prob}")


@dataclass(frozen=True)
class RunConfig:
    """Knobs for a solving run.

    boost multiplies the baseline ceil(1/p) repetition count, pushing the
    per-k failure probability below exp(-boost * success_prob).
    max_repetitions caps the per-k repetitions (a warning is recorded and the
    success guarantee degrades).  family_limit gates the deterministic mode's
    family construction.  stop_at_first returns at the first k whose
    iteration finds a set of size <= alpha * k instead of finishing the loop.
    """

    seed: int = 0
    boost: float = 3.0
    max_repetitions: Optional[int] = None
    parallel_workers: int = 1
    deterministic: bool = False
    stop_at_first: bool = False
    family_limit: int = 14

    def __post_init__(self) -> None:
        if not self.boost >= 1.0:
            raise ValueError(f"boost must be >= 1, got {self.boost}")
        if self.max_repetitions is not None and self.max_repetitions < 1:
            raise ValueError(f"max_repetitions must be >= 1, got {self.max_repetitions}")
        if self.parallel_workers < 1:
            raise ValueError(f"parallel_workers must be >= 1, got {self.parallel_workers}")
        if self.family_limit < 1:
            raise ValueError(f"family_limit must be >= 1, got {self.family_limit}")


@dataclass(frozen=True)
class RunReport:
    """Outcome of one solving run.

    k_found is the loop index whose iteration produced the final solution,
    or -1 if nothing smaller than the full universe was found.  elapsed is
    wall-clock seconds and is excluded from the JSON form.
    """

    instance: str
    n: int
    alpha: float
    c: Optional[float]
    mode: str
    solution: tuple[int, ...]
    size: int
    k_found: int
    total_samples: int
    seed: int
    warnings: tuple[str, ...]
    elapsed: float

    def to_json_dict(self) -> dict:
        return {
            "instance": self.instance,
            "n": self.n,
            "alpha": self.alpha,
            "c": self.c,
            "mode": self.mode,
            "size": self.size,
            "solution": list(self.solution),
            "k_found": self.k_found,
            "total_samples": self.total_samples,
            "seed": self.seed,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


class _Best:
    """Running minimum by (size, lexicographic order of the sorted elements)."""

    def __init__(self, solution: frozenset, k: int) -> None:
        self.key = (len(solution), tuple(sorted(solution)))
        self.k = k

    def offer(self, solution: frozenset, k: int) -> None:
        key = (len(solution), tuple(sorted(solution)))
        if key < self.key:
            self.key = key
            self.k = k

    def merge(self, other: "_Best") -> None:
        if other.key < self.key:
            self.key = other.key
            self.k = other.k


def sample_once(
    inst: MonotoneInstance,
    ext: ExtensionOracle,
    k: int,
    t: int,
    rng: random.Random,
) -> frozenset:
    """One sample-then-extend attempt for target size k.

    Draws X uniformly from all t-subsets, asks the oracle to extend it with
    budget k - ceil(t/alpha), and returns X u Y if that is a member of size
    at most alpha * k.  Any failure returns the full universe (the harmless
    placeholder: always a member).
    """
    alpha = exact_ratio(ext.alpha)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if not 0 <= t <= min(math.floor(alpha * k), inst.n):
        raise ValueError(f"t={t} outside [0, min(floor(alpha*k), n)] for k={k}")
    universe = frozenset(range(inst.n))
    x = frozenset(rng.sample(range(inst.n), t))
    budget = k - math.ceil(Fraction(t) / alpha)
    y = ext.extend(x, budget, rng)
    if y is None:
        return universe
    z = x | frozenset(y)
    if len(z) <= alpha * k and inst.membership(z):
        return z
    return universe


def _sample_chunk(inst, ext, k, t, reps, alpha_k, rng) -> tuple[Optional[_Best], int]:
    """Run up to reps samples, stopping at the first qualifying hit."""
    best = None
    samples = 0
    for _ in range(reps):
        z = sample_once(inst, ext, k, t, rng)
        samples += 1
        if Fraction(len(z)) <= alpha_k:
            best = _Best(z, k)
            break
    return best, samples


def run_randomized(
    inst: MonotoneInstance, ext: ExtensionOracle, cfg: RunConfig = RunConfig()
) -> RunReport:
    """Randomized approximate search (sampling mode).

    For each k in [0, floor(n/alpha)] picks the cost-minimizing sample size,
    runs ceil(boost / p) sample-then-extend attempts, and finally returns
    the smallest member seen across all k (the full universe if none beat
    it).  With boost = 1 the returned size is <= alpha * OPT with
    probability >= 1 - exp(-success_prob); boost multiplies the exponent.
    """
    if cfg.deterministic:
        raise ValueError("cfg.deterministic is set; use run_deterministic")
    start = time.perf_counter()
    alpha = exact_ratio(ext.alpha)
    universe = frozenset(range(inst.n))
    best = _Best(universe, -1)
    warnings: list[str] = []
    total_samples = 0
    boost = exact_ratio(cfg.boost)

    for k in range(math.floor(Fraction(inst.n) / alpha) + 1):
        cost = select_t(inst.n, k, ext.alpha, ext.c)
        reps = math.ceil(boost / cost.p)
        if cfg.max_repetitions is not None and reps > cfg.max_repetitions:
            warnings.append(
                f"k={k}: repetitions capped at {cfg.max_repetitions} "
                f"(needed {reps}); success guarantee degraded"
            )
            reps = cfg.max_repetitions
        alpha_k = alpha * k
        workers = min(cfg.parallel_workers, reps)
        chunks = [reps // workers + (1 if w < reps % workers else 0) for w in range(workers)]
        args = [
            (inst, ext, k, cost.t, chunk, alpha_k, random.Random(f"{cfg.seed}:{k}:{w}"))
            for w, chunk in enumerate(chunks)
            if chunk > 0
        ]
        if len(args) <= 1:
            results = [_sample_chunk(*a) for a in args]
        else:
            with ThreadPoolExecutor(max_workers=len(args)) as pool:
                results = list(pool.map(lambda a: _sample_chunk(*a), args))
        hit = False
        for chunk_best, samples in results:
            total_samples += samples
            if chunk_best is not None:
                hit = True
                best.merge(chunk_best)
        if cfg.stop_at_first and hit:
            break

    return RunReport(
        instance=inst.label,
        n=inst.n,
        alpha=float(ext.alpha),
        c=float(ext.c),
        mode="randomized",
        solution=best.key[1],
        size=best.key[0],
        k_found=best.k,
        total_samples=total_samples,
        seed=cfg.seed,
        warnings=tuple(warnings),
        elapsed=time.perf_counter() - start,
    )


def _log_fraction(f: Fraction) -> float:
    return math.log(f.numerator) - math.log(f.denominator)


def _select_t_deterministic(n: int, k: int, alpha: Fraction, c: float) -> tuple[int, int]:
    """(t, r) minimizing kappa(n, k, t, r) * c^(k - t/alpha), r = ceil(t/alpha)."""
    from .combinatorics import _exact_cost_less

    c_exact = exact_ratio(c) if c != 1.0 else Fraction(1)
    log_c = math.log(c)
    best_t, best_r = 0, 0
    best_factor = Fraction(1)
    best_log = k * log_c
    for t in range(1, min(math.floor(alpha * k), n) + 1):
        r = math.ceil(Fraction(t) / alpha)
        factor = kappa(n, k, t, r)
        log_cost = _log_fraction(factor) + float(k - Fraction(t) / alpha) * log_c
        diff = log_cost - best_log
        if diff < -1e-12 or (
            diff <= 1e-12
            and _exact_cost_less(c_exact, alpha, t, factor, best_t, best_factor)
        ):
            best_t, best_r, best_factor, best_log = t, r, factor, log_cost
    return best_t, best_r


def run_deterministic(
    inst: MonotoneInstance, ext: ExtensionOracle, cfg: RunConfig = RunConfig()
) -> RunReport:
    """Family-driven derandomized search; requires a deterministic oracle.

    For each k, iterates the sample step over every member of a weak
    (n, k, t, ceil(t/alpha))-set-intersection family instead of sampling, so
    the alpha-approximation guarantee holds unconditionally.  Rejects
    instances with n above cfg.family_limit.
    """
    if ext.success_prob != 1.0:
        raise ValueError("deterministic mode needs an oracle with success_prob == 1")
    if inst.n > cfg.family_limit:
        raise LimitExceededError(
            f"deterministic mode limited to n <= {cfg.family_limit}, got n={inst.n}"
        )
    start = time.perf_counter()
    alpha = exact_ratio(ext.alpha)
    universe = frozenset(range(inst.n))
    best = _Best(universe, -1)
    total_samples = 0
    rng = random.Random(f"{cfg.seed}:deterministic")

    for k in range(math.floor(Fraction(inst.n) / alpha) + 1):
        t, r = _select_t_deterministic(inst.n, k, alpha, ext.c)
        if t == 0:
            members: tuple[tuple[int, ...], ...] = ((),)
        else:
            family = build_intersection_family(
                inst.n, k, t, r, strong=False, limit=cfg.family_limit
            )
            members = family.members
        budget = k - r
        alpha_k = alpha * k
        hit = False
        for member in members:
            x = frozenset(member)
            y = ext.extend(x, budget, rng)
            total_samples += 1
            if y is None:
                continue
            z = x | frozenset(y)
            if Fraction(len(z)) <= alpha_k and inst.membership(z):
                best.offer(z, k)
                hit = True
        if cfg.stop_at_first and hit:
            break

    return RunReport(
        instance=inst.label,
        n=inst.n,
        alpha=float(ext.alpha),
        c=float(ext.c),
        mode="deterministic",
        solution=best.key[1],
        size=best.key[0],
        k_found=best.k,
        total_samples=total_samples,
        seed=cfg.seed,
        warnings=(),
        elapsed=time.perf_counter() - start,
    )


def brute_force_search(
    inst: MonotoneInstance, alpha, limit: int = 14
) -> RunReport:
    """Oracle-free approximate search through coverings.

    For each k tests every member of an (n, floor(alpha*k), k)-covering for
    membership; by monotonicity some member contains an optimum once
    k = OPT, so the result has size at most floor(alpha * OPT).
    """
    a = exact_ratio(alpha)
    if a < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if inst.n > limit:
        raise LimitExceededError(
            f"brute-force search limited to n <= {limit}, got n={inst.n}"
        )
    start = time.perf_counter()
    universe = frozenset(range(inst.n))
    best = _Best(universe, -1)
    checks = 0
    for k in range(math.floor(Fraction(inst.n) / a) + 1):
        covering = build_covering(inst.n, math.floor(a * k), k, limit=limit)
        for member in covering.members:
            s = frozenset(member)
            checks += 1
            if inst.membership(s):
                best.offer(s, k)
    return RunReport(
        instance=inst.label,
        n=inst.n,
        alpha=float(a),
        c=None,
        mode="brute",
        solution=best.key[1],
        size=best.key[0],
        k_found=best.k,
        total_samples=checks,
        seed=0,
        warnings=(),
        elapsed=time.perf_counter() - start,
    )


def solve(
    inst: MonotoneInstance, ext: ExtensionOracle, cfg: RunConfig = RunConfig()
) -> RunReport:
    """Dispatch to the mode selected by cfg.deterministic."""
    if cfg.deterministic:
        return run_deterministic(inst, ext, cfg)
    return run_randomized(inst, ext, cfg)


def exhaustive_minimum(inst: MonotoneInstance) -> int:
    """Optimum size by enumerating subsets in increasing size (small n only)."""
    for k in range(inst.n + 1):
        for combo in itertools.combinations(range(inst.n), k):
            if inst.membership(frozenset(combo)):
                return k
    raise ValueError("membership is false on the full universe; not monotone")


def success_rate(
    inst: MonotoneInstance,
    ext: ExtensionOracle,
    trials: int,
    cfg: RunConfig = RunConfig(),
    opt_size: Optional[int] = None,
) -> float:
    """Fraction of independently seeded runs returning size <= alpha * OPT.

    OPT is computed exhaustively when not supplied (guarded to n <= 20).
    Trial i runs with seed cfg.seed + i.
    """
    if opt_size is None:
        if inst.n > 20:
            raise ValueError("supply opt_size for instances with n > 20")
        opt_size = exhaustive_minimum(inst)
    alpha = exact_ratio(ext.alpha)
    successes = 0
    for i in range(trials):
        report = solve(inst, ext, replace(cfg, seed=cfg.seed + i))
        if Fraction(report.size) <= alpha * opt_size:
            successes += 1
    return successes / trials
