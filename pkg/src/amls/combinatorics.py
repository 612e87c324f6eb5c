"""Exact combinatorial quantities behind the local-search cost analysis.

Conventions used throughout this module:

  * n is the universe size, k the target solution size, t the sample size.
  * Probabilities are exact ``fractions.Fraction`` values (always in lowest
    terms, in [0, 1]); logarithms are taken only at the end, for cost
    comparison, so astronomically small tails never underflow.
  * alpha (the approximation ratio) enters integral expressions like
    floor(alpha*k) and ceil(t/alpha).  Floats such as 1.7 do not represent
    their decimal exactly, so these thresholds are computed through
    ``exact_ratio``, which maps a float to the rational its shortest decimal
    form denotes (1.7 -> 17/10).  Cost exponents stay in ordinary floats.

The central quantity is ``hyper_tail(n, k, t, x)``: the probability that a
uniformly random t-subset of an n-universe meets a fixed k-subset in at
least x elements (the upper tail of the hypergeometric distribution).  The
cost of one sample-then-extend iteration at sample size t is

    c^(k - t/alpha) / hyper_tail(n, k, t, ceil(t/alpha))

and ``select_t`` minimizes it over the integer range t in [0, floor(alpha*k)].
The sample budgets use the integral threshold ceil(t/alpha) (a t-subset
meets the target in >= t/alpha elements iff in >= ceil(t/alpha) of them);
the exponent uses the real t/alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "exact_ratio",
    "binomial",
    "hyper_tail",
    "hyper_symmetry_check",
    "IterationCost",
    "iteration_cost",
    "select_t",
    "continuous_t",
    "relaxed_log_cost",
    "empirical_brute_exponent",
    "kappa",
]


def exact_ratio(x: float | int | Fraction) -> Fraction:
    """Exact rational denoted by x's shortest decimal form.

    exact_ratio(1.7) == Fraction(17, 10), whereas Fraction(1.7) would be the
    binary expansion 7656119366529843/4503599627370496.  Integers and
    Fractions pass through unchanged.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(Decimal(str(x)))


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 whenever k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def hyper_tail(n: int, k: int, t: int, x: int) -> Fraction:
    """Pr(|X cap K| >= x) for a uniform t-subset X of [n] and fixed |K| = k.

    Exactly sum_{y >= x} C(k, y) * C(n-k, t-y) / C(n, t).  Returns 1 when the
    threshold is trivially met (e.g. x == 0) and 0 when x > min(k, t).
    """
    if not 0 <= k <= n:
        raise ValueError(f"hyper_tail requires 0 <= k <= n, got k={k}, n={n}")
    if not 0 <= t <= n:
        raise ValueError(f"hyper_tail requires 0 <= t <= n, got t={t}, n={n}")
    if x < 0:
        raise ValueError(f"hyper_tail requires x >= 0, got {x}")
    lo = max(x, 0, t - (n - k))
    hi = min(k, t)
    if lo > hi:
        return Fraction(0)
    favorable = sum(binomial(k, y) * binomial(n - k, t - y) for y in range(lo, hi + 1))
    return Fraction(favorable, binomial(n, t))


def hyper_symmetry_check(n: int, k: int, t: int, x: int) -> bool:
    """Whether the tail is unchanged by swapping the roles of k and t.

    Compares sum_{y>=x} C(k,y) C(n-k,t-y) / C(n,t) against
    sum_{y>=x} C(t,y) C(n-t,k-y) / C(n,k) as exact rationals (the two ways
    of conditioning the same bivariate event).
    """
    if not (0 <= k <= n and 0 <= t <= n):
        raise ValueError(f"invalid parameters n={n}, k={k}, t={t}")
    if x > min(k, t):
        raise ValueError(f"x={x} exceeds min(k, t)={min(k, t)}")
    return hyper_tail(n, k, t, x) == hyper_tail(n, t, k, x)


@dataclass(frozen=True)
class IterationCost:
    """Cost profile of one sample size t for a given (n, k, alpha, c).

    log_cost = (k - t/alpha) * ln(c) - ln(p) where p is the exact success
    probability of a single sample; repetitions = ceil(1/p) is the number of
    samples needed for constant success probability.
    """

    t: int
    log_cost: float
    p: Fraction
    repetitions: int


def _log_fraction(p: Fraction) -> float:
    # math.log on the big-int parts; float(p) could under/overflow
    return math.log(p.numerator) - math.log(p.denominator)


def _validate_alpha_c(alpha, c) -> tuple[Fraction, float]:
    a = exact_ratio(alpha)
    if a < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    c = float(c)
    if not c >= 1.0:
        raise ValueError(f"c must be >= 1, got {c}")
    return a, c


def iteration_cost(n: int, k: int, t: int, alpha, c) -> IterationCost:
    """Exact single-iteration cost profile at sample size t.

    Requires 0 <= k <= floor(n/alpha) and 0 <= t <= min(floor(alpha*k), n).
    Under these bounds ceil(t/alpha) <= min(k, t), so the success
    probability is strictly positive.
    """
    a, c = _validate_alpha_c(alpha, c)
    if not (0 <= k and Fraction(k) <= Fraction(n) / a):
        raise ValueError(f"k={k} outside [0, n/alpha] for n={n}, alpha={alpha}")
    t_max = min(math.floor(a * k), n)
    if not 0 <= t <= t_max:
        raise ValueError(f"t={t} outside [0, min(floor(alpha*k), n)]={t_max}")
    x = math.ceil(Fraction(t) / a)
    p = hyper_tail(n, k, t, x)
    log_cost = float(k - Fraction(t) / a) * math.log(c) - _log_fraction(p)
    return IterationCost(t=t, log_cost=log_cost, p=p, repetitions=math.ceil(1 / p))


def _exact_cost_less(
    c_exact: Fraction, a: Fraction, t1: int, f1: Fraction, t2: int, f2: Fraction
) -> bool:
    """Whether f1 * c^(-t1/a) < f2 * c^(-t2/a), decided in exact arithmetic.

    Used as a tie audit when two log costs agree to within float noise.  The
    comparison is raised to the a.numerator-th power so all exponents become
    integers (both sides are positive, so the order is preserved).
    """
    lhs = (f1 / f2) ** a.numerator
    rhs = c_exact ** ((t1 - t2) * a.denominator)
    return lhs < rhs


@lru_cache(maxsize=None)
def select_t(n: int, k: int, alpha, c) -> IterationCost:
    """Integer sample size in [0, floor(alpha*k)] minimizing the iteration cost.

    Comparison happens in log space; candidates within 1e-12 of the incumbent
    are re-compared in exact rational arithmetic.  Ties keep the smaller t.
    """
    a, c = _validate_alpha_c(alpha, c)
    best = iteration_cost(n, k, 0, alpha, c)
    c_exact = exact_ratio(c) if c != 1.0 else Fraction(1)
    for t in range(1, min(math.floor(a * k), n) + 1):
        cand = iteration_cost(n, k, t, alpha, c)
        diff = cand.log_cost - best.log_cost
        if diff < -1e-12:
            best = cand
        elif diff <= 1e-12:
            if _exact_cost_less(c_exact, a, cand.t, 1 / cand.p, best.t, 1 / best.p):
                best = cand
    return best


def continuous_t(n: int, k: float, alpha, c) -> float:
    """Analytic continuous minimizer (k - n*delta*) / (1/alpha - delta*).

    delta* is the critical density (amls_bound(alpha, c) - 1)/(c - 1).  k may
    be real (this is the continuous relaxation) and the result may be
    negative; callers clamp to the feasible range.  Requires c > 1 (delta*
    degenerates to 1/alpha at c == 1).
    """
    from .bounds import amls_bound

    a, c = _validate_alpha_c(alpha, c)
    if c <= 1.0:
        raise ValueError(f"continuous_t requires c > 1, got {c}")
    if not (0 <= k and exact_ratio(k) <= Fraction(n) / a):
        raise ValueError(f"k={k} outside [0, n/alpha] for n={n}, alpha={alpha}")
    delta = (amls_bound(float(alpha), c) - 1.0) / (c - 1.0)
    return (k - n * delta) / (1.0 / float(a) - delta)


def _xlogy(x: float, y: float) -> float:
    return 0.0 if x == 0.0 else x * math.log(y)


def relaxed_log_cost(n: int, k: int, t, alpha, c, form: str = "entropy") -> float:
    """Continuous relaxation of the log iteration cost, in two algebraic forms.

    With rho = (k - t/alpha)/(n - t) and H the entropy function:

      entropy form: (k - t/alpha) ln(c) - t*H(1/alpha) - (n-t)*H(rho)
      kl form:      (k - t/alpha) ln(c) + t*D(1/alpha || rho)
                    + k*ln(rho) + (n-k)*ln(1-rho)

    The two are algebraically identical; evaluating both is a numeric
    cross-check.  Requires 0 <= t < n and 0 <= rho <= 1.  At rho == 0 and
    rho == 1 the kl form's infinities cancel pairwise; the cancelled limit
    is evaluated directly.
    """
    from .bounds import entropy, kl_divergence

    a_frac, c = _validate_alpha_c(alpha, c)
    if not 0 <= t < n:
        raise ValueError(f"t={t} outside [0, n) for n={n}")
    t_frac = exact_ratio(t)
    rho_frac = (Fraction(k) - t_frac / a_frac) / (Fraction(n) - t_frac)
    if not 0 <= rho_frac <= 1:
        raise ValueError(f"(k - t/alpha)/(n - t) = {rho_frac} outside [0, 1]")
    a = 1.0 / float(a_frac)
    t = float(t_frac)
    rho = float(rho_frac)
    base = (k - t * a) * math.log(c)
    if form == "entropy":
        return base - t * entropy(a) - (n - t) * entropy(rho)
    if form != "kl":
        raise ValueError(f"form must be 'entropy' or 'kl', got {form!r}")
    if rho_frac == 0:  # k == t/alpha: the k*ln(rho) and t*a*ln(1/rho) poles cancel
        return base + _xlogy(k, a) + _xlogy(t * (1.0 - a), 1.0 - a)
    if rho_frac == 1:  # k - t/alpha == n - t: (n-k)*ln(1-rho) pole cancels likewise
        return base + _xlogy(t * a, a) + _xlogy(t * (1.0 - a), 1.0 - a)
    kl_term = 0.0 if t == 0.0 else t * kl_divergence(a, rho)
    return base + kl_term + _xlogy(k, rho) + _xlogy(n - k, 1.0 - rho)


def empirical_brute_exponent(n: int, alpha) -> float:
    """(1/n) * ln( max over k in [0, n/alpha) of C(n, k) / C(floor(alpha*k), k) ).

    The maximum is taken over exact big-integer ratios; a single logarithm is
    applied at the end.  As n grows this converges to ln(brute_bound(alpha)).
    """
    a, _ = _validate_alpha_c(alpha, 1.0)
    if n < 2:
        raise ValueError(f"empirical_brute_exponent requires n >= 2, got {n}")
    best = Fraction(0)
    k = 0
    while Fraction(k) * a < n:
        ratio = Fraction(binomial(n, k), binomial(math.floor(a * k), k))
        if ratio > best:
            best = ratio
        k += 1
    return _log_fraction(best) / n


def kappa(n: int, p: int, q: int, r: int) -> Fraction:
    """C(n, q) / (C(p, r) * C(n-p, q-r)), exactly.

    The reciprocal of the probability that a uniform q-subset meets a fixed
    p-subset in exactly r elements; it scales the size of set-intersection
    families.  Requires n >= p >= r >= 1 and n - p + r >= q >= r.
    """
    if not n >= p >= r >= 1:
        raise ValueError(f"kappa requires n >= p >= r >= 1, got n={n}, p={p}, r={r}")
    if not n - p + r >= q >= r:
        raise ValueError(
            f"kappa requires n - p + r >= q >= r, got n={n}, p={p}, q={q}, r={r}"
        )
    return Fraction(binomial(n, q), binomial(p, r) * binomial(n - p, q - r))
