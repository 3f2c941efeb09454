"""Closed-form privacy budgets for shot-noise-limited measurements.

Four budgets are provided, indexed by noise regime and accounting style:

    epsilon_noiseless          pure epsilon, no channel noise
    epsilon_depolarizing       pure epsilon under depolarizing noise
    epsilon_delta_noiseless    (epsilon, delta) with a 3-sigma tail cutoff
    epsilon_delta_depolarizing (epsilon, delta) under depolarizing noise

All four consume a `BudgetInputs` bundle and return a `PrivacyReport`
carrying the numbers plus warning flags for regimes where a formula is
outside its comfort zone. `mu` is always the smaller of the two outcome
means being distinguished. The tail cutoff `c` and the tail mass `delta`
are interchangeable through `delta_from_c` / `c_from_delta`.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, replace

from .errors import (
    BadConfigError,
    DegenerateMuError,
    DeltaOutOfRangeError,
    OutOfRangeError,
    UnattainableError,
    ZeroNoiseError,
)

erfc = math.erfc
"""Complementary error function (absolute error well under 1e-7 for |x| <= 6)."""


@dataclass(frozen=True)
class BudgetInputs:
    """Parameter bundle shared by the budget formulas.

    Attributes
    ----------
    d : float
        Trace distance between the neighboring states, in [0, 1].
    r : int
        Rank of the measured projector, at least 1.
    n : int
        Number of measurement shots, at least 1.
    mu : float
        Smaller of the two outcome means, strictly inside (0, 1).
    p : float, optional
        Depolarizing probability in (0, 1]; required by the noisy budgets.
    D : int, optional
        System dimension, at least 1; required by the noisy budgets.
    c : float, optional
        Positive tail cutoff for the (epsilon, delta) budgets.
    delta : float, optional
        Positive tail mass; alternative to `c` (supply exactly one).
    beta : float
        Confidence level the 3-sigma constants correspond to. Stored for
        provenance; the constants 9/2, 3/2, 3 are fixed.
    """

    d: float
    r: int
    n: int
    mu: float
    p: float | None = None
    D: int | None = None
    c: float | None = None
    delta: float | None = None
    beta: float = 0.997

    def __post_init__(self):
        if not 0.0 <= self.d <= 1.0:
            raise OutOfRangeError(f"OutOfRange: distance d={self.d} outside [0, 1]")
        if int(self.r) != self.r or self.r < 1:
            raise OutOfRangeError(f"OutOfRange: rank r={self.r!r} must be a positive integer")
        if int(self.n) != self.n or self.n < 1:
            raise OutOfRangeError(f"OutOfRange: shots n={self.n!r} must be a positive integer")
        if not 0.0 <= self.mu <= 1.0:
            raise OutOfRangeError(f"OutOfRange: mean mu={self.mu} outside [0, 1]")
        if self.mu == 0.0 or self.mu == 1.0:
            raise DegenerateMuError(f"DegenerateMu: mean mu={self.mu} leaves zero variance")
        if self.p is not None:
            if self.p == 0.0:
                raise ZeroNoiseError("ZeroNoise: depolarizing probability 0 gives an unbounded constant")
            if not 0.0 < self.p <= 1.0:
                raise OutOfRangeError(f"OutOfRange: depolarizing probability p={self.p} outside (0, 1]")
        if self.D is not None and (int(self.D) != self.D or self.D < 1):
            raise OutOfRangeError(f"OutOfRange: dimension D={self.D!r} must be a positive integer")
        if self.c is not None and not self.c > 0.0:
            raise OutOfRangeError(f"OutOfRange: cutoff c={self.c} must be positive")
        if self.delta is not None and not self.delta > 0.0:
            raise OutOfRangeError(f"OutOfRange: delta={self.delta} must be positive")
        if not 0.0 < self.beta < 1.0:
            raise OutOfRangeError(f"OutOfRange: beta={self.beta} outside (0, 1)")


@dataclass(frozen=True)
class PrivacyReport:
    """Budget evaluation result: the numbers plus honesty flags.

    `epsilon` is finite and nonnegative unless "Divergent" appears in
    `warnings`; `delta` is 0 for the pure budgets. `inputs` echoes the
    bundle the numbers were computed from.
    """

    epsilon: float
    delta: float
    warnings: tuple[str, ...]
    inputs: BudgetInputs


def _value_flags(epsilon: float, flags: list[str]) -> tuple[str, ...]:
    # Divergent marks any epsilon a caller must not trust as a budget.
    if not math.isfinite(epsilon) or epsilon < 0.0:
        flags.append("Divergent")
    return tuple(flags)


def depolarizing_constant(p: float, d: float, r: int, dim: int) -> float:
    """Scale ((1-p)/p) d r dim entering the depolarizing budgets.

    Grows without bound as p -> 0+, so p = 0 is rejected as ZeroNoise.
    """
    if p == 0.0:
        raise ZeroNoiseError("ZeroNoise: depolarizing probability 0 gives an unbounded constant")
    if not 0.0 < p <= 1.0:
        raise OutOfRangeError(f"OutOfRange: depolarizing probability p={p} outside (0, 1]")
    if not 0.0 <= d <= 1.0:
        raise OutOfRangeError(f"OutOfRange: distance d={d} outside [0, 1]")
    if int(r) != r or r < 1:
        raise OutOfRangeError(f"OutOfRange: rank r={r!r} must be a positive integer")
    if int(dim) != dim or dim < 1:
        raise OutOfRangeError(f"OutOfRange: dimension {dim!r} must be a positive integer")
    return ((1.0 - p) / p) * d * r * dim


def expectation_ratio_bound(mu1: float, d: float, p: float, dim: int) -> float:
    """Largest mean mu1 (1 + ((1-p)/p) d dim) reachable from a state with
    mean mu1 by moving trace distance d under depolarizing noise p."""
    if not 0.0 < mu1 < 1.0:
        raise DegenerateMuError(f"DegenerateMu: mean mu1={mu1} outside (0, 1)")
    if p == 0.0:
        raise ZeroNoiseError("ZeroNoise: depolarizing probability 0 gives an unbounded ratio")
    if not 0.0 < p <= 1.0:
        raise OutOfRangeError(f"OutOfRange: depolarizing probability p={p} outside (0, 1]")
    if not 0.0 <= d <= 1.0:
        raise OutOfRangeError(f"OutOfRange: distance d={d} outside [0, 1]")
    if int(dim) != dim or dim < 1:
        raise OutOfRangeError(f"OutOfRange: dimension {dim!r} must be a positive integer")
    return mu1 * (1.0 + ((1.0 - p) / p) * d * dim)


def epsilon_noiseless(inp: BudgetInputs) -> PrivacyReport:
    """Pure-epsilon budget for a noiseless circuit.

        eps = (d r / ((1-mu) mu)) [ (9/2)(1-2mu) + (3/2) sqrt(n)
                                    + d r (mu + d r) n / (1-mu) ]

    The first bracket term goes negative for mu > 1/2; the report flags
    that regime rather than adjusting the value.
    """
    dr = inp.d * inp.r
    mu = inp.mu
    bracket = 4.5 * (1.0 - 2.0 * mu) + 1.5 * math.sqrt(inp.n) + dr * (mu + dr) * inp.n / (1.0 - mu)
    eps = (dr / ((1.0 - mu) * mu)) * bracket
    flags = ["RegimeNegativeTerm"] if mu > 0.5 else []
    return PrivacyReport(epsilon=eps, delta=0.0, warnings=_value_flags(eps, flags), inputs=inp)


def epsilon_depolarizing(inp: BudgetInputs) -> PrivacyReport:
    """Pure-epsilon budget under depolarizing noise.

    With a = ((1-p)/p) d r D,

        eps = (a / (1-mu)) [ (9/2)(1-2mu) + (3/2) sqrt(n)
                             + a mu^2 (1+a) n / (1-mu) ]
    """
    if inp.p is None or inp.D is None:
        raise BadConfigError("BadConfig: depolarizing budget needs both p and D")
    a = depolarizing_constant(inp.p, inp.d, inp.r, inp.D)
    mu = inp.mu
    bracket = 4.5 * (1.0 - 2.0 * mu) + 1.5 * math.sqrt(inp.n) + a * mu * mu * (1.0 + a) * inp.n / (1.0 - mu)
    eps = (a / (1.0 - mu)) * bracket
    flags = ["RegimeNegativeTerm"] if mu > 0.5 else []
    return PrivacyReport(epsilon=eps, delta=0.0, warnings=_value_flags(eps, flags), inputs=inp)


def delta_from_c(c: float, mu: float, n: int, convention: str = "paper") -> float:
    """Gaussian tail mass outside mu +/- c for the n-shot sample mean.

    With sigma = sqrt(mu(1-mu)/n):

        paper       sqrt(2 pi) sigma erfc(c / (sqrt(2) sigma))
        normalized  erfc(c / (sqrt(2) sigma))

    The paper convention scales the two-sided tail by the kernel's
    unnormalized height and can exceed 1; a RuntimeWarning named
    DeltaExceedsOne is emitted in that case and the value is returned
    as computed.
    """
    if not c > 0.0:
        raise OutOfRangeError(f"OutOfRange: cutoff c={c} must be positive")
    if not 0.0 < mu < 1.0:
        raise DegenerateMuError(f"DegenerateMu: mean mu={mu} outside (0, 1)")
    if int(n) != n or n < 1:
        raise OutOfRangeError(f"OutOfRange: shots n={n!r} must be a positive integer")
    if convention not in ("paper", "normalized"):
        raise BadConfigError(f"BadConfig: unknown convention {convention!r}")
    sigma = math.sqrt(mu * (1.0 - mu) / n)
    tail = erfc(c / (math.sqrt(2.0) * sigma))
    value = math.sqrt(2.0 * math.pi) * sigma * tail if convention == "paper" else tail
    if value > 1.0:
        _warnings.warn(f"DeltaExceedsOne: delta={value:.6g} under the {convention} convention", RuntimeWarning, stacklevel=2)
    return value


def c_from_delta(delta: float, mu: float, n: int, convention: str = "paper") -> float:
    """Invert delta_from_c by bisection on the strictly decreasing tail.

    Converges until the recomputed delta matches the target to 1e-10
    relative. Targets at or above the c -> 0 limit (sqrt(2 pi) sigma in the
    paper convention, 1 normalized) or at or below 0 raise
    DeltaOutOfRangeError.
    """
    if not 0.0 < mu < 1.0:
        raise DegenerateMuError(f"DegenerateMu: mean mu={mu} outside (0, 1)")
    if int(n) != n or n < 1:
        raise OutOfRangeError(f"OutOfRange: shots n={n!r} must be a positive integer")
    if convention not in ("paper", "normalized"):
        raise BadConfigError(f"BadConfig: unknown convention {convention!r}")
    sigma = math.sqrt(mu * (1.0 - mu) / n)
    supremum = math.sqrt(2.0 * math.pi) * sigma if convention == "paper" else 1.0
    if not 0.0 < delta < supremum:
        raise DeltaOutOfRangeError(f"DeltaOutOfRange: delta={delta} not inside (0, {supremum:.12g})")

    def tail(c):
        base = erfc(c / (math.sqrt(2.0) * sigma))
        return math.sqrt(2.0 * math.pi) * sigma * base if convention == "paper" else base

    lo = 0.0
    hi = sigma
    while tail(hi) > delta:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        value = tail(mid)
        if abs(value - delta) <= 1e-10 * delta:
            return mid
        if value > delta:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-300:
            break
    return 0.5 * (lo + hi)


def _tail_budget(scale: float, shots_times_scale: float, mu: float, c: float) -> tuple[float, list[str]]:
    """Shared (epsilon, delta) bracket: prefactor `scale`, pole at 1-mu-u."""
    u = shots_times_scale
    denom = 1.0 - mu - u
    flags = []
    if denom <= 0.0:
        flags.append("RegimeInvalid")
    if denom == 0.0:
        eps = float("-inf") if scale > 0.0 else 0.0
    else:
        bracket = (1.0 - 2.0 * mu - u) * c * c / (2.0 * mu * denom) + c + u / 2.0
        eps = scale * bracket
    return eps, flags


def epsilon_delta_noiseless(inp: BudgetInputs, convention: str = "paper") -> PrivacyReport:
    """(epsilon, delta) budget for a noiseless circuit with tail cutoff c.

        eps = (n d r / (mu (1-mu))) [ (1 - 2mu - n d r) c^2 / (2 mu (1 - mu - n d r))
                                      + c + n d r / 2 ]

    Supply exactly one of `c` and `delta`; the other is derived through the
    Gaussian tail formula. The report flags RegimeInvalid once n d r
    reaches 1 - mu (the bracket's pole) and DeltaExceedsOne when the paper
    convention pushes delta past 1; values are returned as computed.
    """
    c, delta, flags = _resolve_tail(inp, convention)
    u = inp.n * inp.d * inp.r
    eps, more = _tail_budget(u / (inp.mu * (1.0 - inp.mu)), u, inp.mu, c)
    flags += more
    return PrivacyReport(epsilon=eps, delta=delta, warnings=_value_flags(eps, flags), inputs=replace(inp, c=c))


def epsilon_delta_depolarizing(inp: BudgetInputs, convention: str = "paper") -> PrivacyReport:
    """(epsilon, delta) budget under depolarizing noise with tail cutoff c.

    With a = ((1-p)/p) d r D,

        eps = (a / (1-mu)) [ (1 - 2mu - n a) c^2 / (2 mu (1 - mu - n a))
                             + c + n a / 2 ]

    Same flag semantics as the noiseless variant, with the pole at
    1 - mu - n a.
    """
    if inp.p is None or inp.D is None:
        raise BadConfigError("BadConfig: depolarizing budget needs both p and D")
    c, delta, flags = _resolve_tail(inp, convention)
    a = depolarizing_constant(inp.p, inp.d, inp.r, inp.D)
    eps, more = _tail_budget(a / (1.0 - inp.mu), inp.n * a, inp.mu, c)
    flags += more
    return PrivacyReport(epsilon=eps, delta=delta, warnings=_value_flags(eps, flags), inputs=replace(inp, c=c))


def _resolve_tail(inp: BudgetInputs, convention: str) -> tuple[float, float, list[str]]:
    """Turn the one supplied tail parameter into the (c, delta) pair."""
    if (inp.c is None) == (inp.delta is None):
        raise BadConfigError("BadConfig: supply exactly one of c and delta")
    if inp.c is not None:
        c = inp.c
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore", RuntimeWarning)
            delta = delta_from_c(c, inp.mu, inp.n, convention)
    else:
        delta = inp.delta
        c = c_from_delta(delta, inp.mu, inp.n, convention)
    flags = ["DeltaExceedsOne"] if delta > 1.0 else []
    return c, float(delta), flags


def shots_for_budget(target_epsilon: float, inp: BudgetInputs, regime: str = "noiseless") -> int:
    """Largest shot count whose pure-epsilon budget stays within the target.

    The pure budgets grow strictly with n whenever their scale (d r, or the
    depolarizing constant) is positive, so the answer is found by doubling
    then integer bisection. Raises UnattainableError when even one shot
    exceeds the target, and BadConfigError when the budget is identically
    zero (nothing to bound: d = 0, or p = 1).
    """
    if not target_epsilon > 0.0:
        raise OutOfRangeError(f"OutOfRange: target epsilon {target_epsilon} must be positive")
    if regime == "noiseless":
        evaluate = lambda n: epsilon_noiseless(replace(inp, n=n)).epsilon
        scale = inp.d * inp.r
    elif regime == "depolarizing":
        if inp.p is None or inp.D is None:
            raise BadConfigError("BadConfig: depolarizing budget needs both p and D")
        evaluate = lambda n: epsilon_depolarizing(replace(inp, n=n)).epsilon
        scale = depolarizing_constant(inp.p, inp.d, inp.r, inp.D)
    else:
        raise BadConfigError(f"BadConfig: unknown regime {regime!r}")
    if scale == 0.0:
        raise BadConfigError("BadConfig: epsilon is identically zero, every shot count fits the budget")
    if evaluate(1) > target_epsilon:
        raise UnattainableError(f"Unattainable: epsilon({1}) = {evaluate(1):.6g} already exceeds {target_epsilon}")
    lo, hi = 1, 2
    while evaluate(hi) <= target_epsilon:
        lo, hi = hi, hi * 2
    # Invariant: evaluate(lo) <= target < evaluate(hi); shrink to adjacent.
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if evaluate(mid) <= target_epsilon:
            lo = mid
        else:
            hi = mid
    return lo
