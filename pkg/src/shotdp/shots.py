"""Statistics of repeated projective measurement: exact and Gaussian models.

Averaging n single-shot outcomes gives a sample mean on the grid
{0, 1/n, ..., 1}. `binomial_distribution` is the exact law of that mean;
`normal_model` is its central-limit surrogate. `log_likelihood_ratio`
compares the Gaussian surrogates of two candidate means, and `sample_means`
draws reproducible Monte Carlo batches from the exact law.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DegenerateMuError, OutOfRangeError


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Exact law of the success count over n shots: probs[k] = P(count = k)."""

    n: int
    mu: float
    probs: np.ndarray


@dataclass(frozen=True)
class NormalModel:
    """Gaussian surrogate for the sample mean of n shots."""

    mean: float
    variance: float


def _check_mu(mu: float, allow_endpoints: bool) -> float:
    mu = float(mu)
    if not 0.0 <= mu <= 1.0:
        raise OutOfRangeError(f"OutOfRange: mean {mu} outside [0, 1]")
    if not allow_endpoints and (mu == 0.0 or mu == 1.0):
        raise DegenerateMuError(f"DegenerateMu: mean {mu} leaves zero variance")
    return mu


def _check_shots(n: int) -> int:
    if int(n) != n or n < 1:
        raise OutOfRangeError(f"OutOfRange: shot count must be a positive integer, got {n!r}")
    return int(n)


def single_shot_variance(mu: float) -> float:
    """Variance mu(1-mu) of one projective outcome with success probability mu."""
    mu = _check_mu(mu, allow_endpoints=True)
    return mu * (1.0 - mu)


def log_binomial_pmf(mu: float, n: int) -> np.ndarray:
    """Log of the n-shot count law at every k, stable out to n = 10^4.

    Requires mu strictly inside (0, 1); endpoint means have -inf entries
    and are served by `binomial_distribution` as point masses instead.
    """
    mu = _check_mu(mu, allow_endpoints=False)
    n = _check_shots(n)
    k = np.arange(n + 1)
    return (
        gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
        + k * np.log(mu) + (n - k) * np.log1p(-mu)
    )


def binomial_distribution(mu: float, n: int) -> OutcomeDistribution:
    """Exact outcome-count law for n shots.

    Probabilities are accumulated in log space (log-gamma form of the
    binomial coefficient) so large n neither overflows nor loses the tails.
    Endpoint means are allowed and give point masses.
    """
    mu = _check_mu(mu, allow_endpoints=True)
    n = _check_shots(n)
    if mu == 0.0 or mu == 1.0:
        probs = np.zeros(n + 1)
        probs[n if mu == 1.0 else 0] = 1.0
    else:
        probs = np.exp(log_binomial_pmf(mu, n))
    probs.setflags(write=False)
    return OutcomeDistribution(n=n, mu=mu, probs=probs)


def normal_model(mu: float, n: int) -> NormalModel:
    """Gaussian surrogate N(mu, mu(1-mu)/n) for the sample mean.

    Raises DegenerateMuError at mu in {0, 1}: the surrogate needs positive
    variance.
    """
    mu = _check_mu(mu, allow_endpoints=False)
    n = _check_shots(n)
    return NormalModel(mean=mu, variance=mu * (1.0 - mu) / n)


def log_likelihood_ratio(x: float, mu0: float, mu1: float, n: int) -> float:
    """Log ratio of the two unnormalized Gaussian-surrogate kernels at x.

    Positive where an observed mean x favors mu0 over mu1. Expanded
    polynomial form

        n (mu0 - mu1) [ (1 - mu0 - mu1) x^2 / (2 mu0 mu1 (1-mu0)(1-mu1))
                        + x / ((1-mu0)(1-mu1))
                        - 1 / (2 (1-mu0)(1-mu1)) ]

    The bracket is symmetric in (mu0, mu1) and is evaluated from the sorted
    pair, so swapping the hypotheses flips exactly one sign: antisymmetry is
    bit-exact. The shot count multiplies last, so scaling in n is exact too.
    The kernels are unnormalized: no log-sigma term appears.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise OutOfRangeError(f"OutOfRange: sample mean {x} outside [0, 1]")
    mu0 = _check_mu(mu0, allow_endpoints=False)
    mu1 = _check_mu(mu1, allow_endpoints=False)
    n = _check_shots(n)
    lo, hi = (mu0, mu1) if mu0 <= mu1 else (mu1, mu0)
    edge = (1.0 - lo) * (1.0 - hi)
    quad = (1.0 - lo - hi) / (2.0 * lo * hi * edge)
    bracket = quad * x * x + x / edge - 1.0 / (2.0 * edge)
    return n * ((mu0 - mu1) * bracket)


def sample_means(mu: float, n: int, trials: int, seed: int) -> np.ndarray:
    """Draw `trials` sample means of n shots each, reproducibly.

    The generator is counter-based (Philox keyed by `seed`): trial t reads
    slot t of the keyed stream, so results do not depend on execution order
    or batching. Each trial turns one uniform into a count by inverting the
    exact cumulative law, then divides by n.
    """
    if int(trials) != trials or trials < 1:
        raise OutOfRangeError(f"OutOfRange: trials must be a positive integer, got {trials!r}")
    if int(seed) != seed or seed < 0:
        raise OutOfRangeError(f"OutOfRange: seed must be a nonnegative integer, got {seed!r}")
    dist = binomial_distribution(mu, n)
    cdf = np.cumsum(dist.probs)
    cdf[-1] = 1.0  # close the float gap so every uniform lands in a bin
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    u = rng.random(int(trials))
    counts = np.searchsorted(cdf, u, side="right")
    return counts / float(n)
