"""Exact EXIT functions on the binary erasure channel.

Extrinsic mutual information is evaluated from exact integer coefficient
tables derived from the (split) information functions; only the final
polynomial evaluation is floating point.  The a-priori input is an erasure
probability p with I_A = 1 - p, and variable nodes additionally see the
communication channel erasure probability q.

The per-term weights p^t (1-p)^(n-1-t) are built from running products so
that the boundary points p = 0 and p = 1 evaluate exactly.  The functions
do not range-check p or q: the polynomials are defined everywhere, which
lets finite-difference probes straddle p = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .codes import ComponentCode, info_functions, split_info_functions
from .ensembles import Ensemble, component_code, validate

MONOTONICITY_GRID = 1024
INVERSION_STEPS = 60


class MonotonicityError(RuntimeError):
    """The sampled check-side EXIT curve increased somewhere; inversion is blocked."""


class InversionRangeError(RuntimeError):
    """The inversion target is outside the range of the check-side EXIT curve."""


@dataclass(frozen=True)
class ExitCoefficients:
    """Exact integer EXIT expansion coefficients of one component code.

    check_terms[t] = (n-t) e~_{n-t} - (t+1) e~_{n-t-1} for t = 0..n-1;
    variable_terms[t][z] is the split analogue with identity columns k-z.
    Both vanish at t = 0 exactly when the minimum distance is >= 2.
    """

    check_terms: tuple[int, ...]
    variable_terms: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def exit_coefficients(code: ComponentCode) -> ExitCoefficients:
    n, k = code.n, code.k
    e = info_functions(code).values
    check = tuple((n - t) * e[n - t] - (t + 1) * e[n - t - 1] for t in range(n))
    s = split_info_functions(code).values
    variable = tuple(
        tuple((n - t) * s[n - t][k - z] - (t + 1) * s[n - t - 1][k - z] for z in range(k + 1))
        for t in range(n)
    )
    return ExitCoefficients(check, variable)


def _bernoulli_weights(p: float, count: int) -> list[float]:
    """Weights w_t = p^t (1-p)^(count-1-t) for t = 0..count-1.

    Built from running products so p = 0 and p = 1 stay exact.
    """
    w = [1.0] * count
    acc = 1.0
    for t in range(1, count):
        acc *= p
        w[t] = acc
    u = 1.0 - p
    acc = 1.0
    for t in range(count - 2, -1, -1):
        acc *= u
        w[t] *= acc
    return w


def exit_check_generic(code: ComponentCode, p: float) -> float:
    """Extrinsic information of a generalized check node at erasure p."""
    n = code.n
    a = exit_coefficients(code).check_terms
    w = _bernoulli_weights(p, n)
    return 1.0 - sum(a[t] * w[t] for t in range(n)) / n


def exit_variable_generic(code: ComponentCode, p: float, q: float) -> float:
    """Extrinsic information of a generalized variable node at (p, q).

    At q = 1 (no channel observation) this reduces to the check-node form.
    """
    n, k = code.n, code.k
    a = exit_coefficients(code).variable_terms
    w = _bernoulli_weights(p, n)
    v = _bernoulli_weights(q, k + 1)  # v[z] = q^z (1-q)^(k-z)
    total = 0.0
    for t in range(n):
        row = a[t]
        inner = 0.0
        for z in range(k + 1):
            inner += row[z] * v[z]
        total += inner * w[t]
    return 1.0 - total / n


def _variable_type_terms(ens: Ensemble):
    rep_terms: list[tuple[float, int]] = []
    gen_terms: list[tuple[float, int, int, tuple[tuple[int, ...], ...]]] = []
    for t in ens.variable_types:
        if t.kind == "repetition":
            rep_terms.append((t.edge_fraction, t.length))
        else:
            code = component_code(t)
            coeffs = exit_coefficients(code).variable_terms
            gen_terms.append((t.edge_fraction, code.n, code.k, coeffs))
    return rep_terms, gen_terms


@lru_cache(maxsize=None)
def vnd_evaluator(ens: Ensemble) -> Callable[[float, float], float]:
    """Compiled (p, q) -> I_{E,V} mixture for a validated ensemble.

    Repetition types use the closed form 1 - q p^(j-1); everything else
    goes through the generic split-coefficient evaluation.
    """
    validate(ens)
    rep_terms, gen_terms = _variable_type_terms(ens)

    def evaluate(p: float, q: float) -> float:
        total = 0.0
        for frac, j in rep_terms:
            total += frac * (1.0 - q * p ** (j - 1))
        for frac, n, k, coeffs in gen_terms:
            w = _bernoulli_weights(p, n)
            v = _bernoulli_weights(q, k + 1)
            acc = 0.0
            for t in range(n):
                row = coeffs[t]
                inner = 0.0
                for z in range(k + 1):
                    inner += row[z] * v[z]
                acc += inner * w[t]
            total += frac * (1.0 - acc / n)
        return total

    return evaluate


def vnd_evaluator_at_q(ens: Ensemble, q: float) -> Callable[[float], float]:
    """The variable-side mixture specialized to one channel quality q.

    The split-coefficient z-sums collapse into one coefficient per p-power,
    which makes this the evaluator of choice for density-evolution loops
    where q is fixed across many iterations.  Values are bit-identical to
    vnd_evaluator(ens)(p, q).
    """
    validate(ens)
    rep_terms, gen_terms = _variable_type_terms(ens)
    fixed_rep = [(frac, j - 1) for frac, j in rep_terms]
    fixed_gen = []
    for frac, n, k, coeffs in gen_terms:
        v = _bernoulli_weights(q, k + 1)
        collapsed = []
        for t in range(n):
            row = coeffs[t]
            inner = 0.0
            for z in range(k + 1):
                inner += row[z] * v[z]
            collapsed.append(inner)
        fixed_gen.append((frac, n, tuple(collapsed)))

    def evaluate(p: float) -> float:
        total = 0.0
        for frac, e in fixed_rep:
            total += frac * (1.0 - q * p**e)
        for frac, n, collapsed in fixed_gen:
            acc = 0.0
            for c, wt in zip(collapsed, _bernoulli_weights(p, n)):
                acc += c * wt
            total += frac * (1.0 - acc / n)
        return total

    return evaluate


@lru_cache(maxsize=None)
def cnd_evaluator(ens: Ensemble) -> Callable[[float], float]:
    """Compiled p -> I_{E,C} mixture; SPC types use (1-p)^(j-1)."""
    validate(ens)
    spc_terms: list[tuple[float, int]] = []
    gen_terms: list[tuple[float, int, tuple[int, ...]]] = []
    for t in ens.check_types:
        if t.kind == "spc":
            spc_terms.append((t.edge_fraction, t.length))
        else:
            code = component_code(t)
            gen_terms.append((t.edge_fraction, code.n, exit_coefficients(code).check_terms))

    def evaluate(p: float) -> float:
        total = 0.0
        for frac, j in spc_terms:
            total += frac * (1.0 - p) ** (j - 1)
        for frac, n, coeffs in gen_terms:
            acc = 0.0
            for c, wt in zip(coeffs, _bernoulli_weights(p, n)):
                acc += c * wt
            total += frac * (1.0 - acc / n)
        return total

    return evaluate


def exit_vnd(ens: Ensemble, p: float, q: float) -> float:
    """Aggregate variable-node EXIT function of the ensemble."""
    return vnd_evaluator(ens)(p, q)


def exit_cnd(ens: Ensemble, p: float) -> float:
    """Aggregate check-node EXIT function of the ensemble."""
    return cnd_evaluator(ens)(p)


def _check_decreasing(values: list[float]) -> None:
    """Raise unless the sampled curve never increases.

    Adjacent float ties are tolerated (extremely flat stretches round to
    equal doubles); an actual increase means the curve is not invertible.
    """
    for i in range(len(values) - 1):
        if values[i + 1] > values[i]:
            raise MonotonicityError(
                f"check-side EXIT curve increases between grid points {i} and {i + 1}"
            )


@lru_cache(maxsize=None)
def _assert_cnd_invertible(ens: Ensemble) -> bool:
    f = cnd_evaluator(ens)
    step = 1.0 / (MONOTONICITY_GRID - 1)
    _check_decreasing([f(i * step) for i in range(MONOTONICITY_GRID)])
    return True


def inverse_exit_cnd(ens: Ensemble, target: float) -> float:
    """The erasure probability p with I_{E,C}(p) = target, by bisection.

    Requires target within the curve's range [I_{E,C}(1), 1]; the curve is
    checked for monotonicity on a fixed grid before the first inversion.
    """
    if not 0.0 <= target <= 1.0:
        raise ValueError(f"inversion target must be in [0, 1], got {target}")
    _assert_cnd_invertible(ens)
    f = cnd_evaluator(ens)
    lo, hi = 0.0, 1.0
    flo, fhi = f(lo), f(hi)
    if target >= flo:
        return 0.0
    if target < fhi - 1e-12:
        raise InversionRangeError(
            f"target {target} below the check-side EXIT minimum {fhi}"
        )
    if target <= fhi:
        return 1.0
    for _ in range(INVERSION_STEPS):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == target:
            return mid
        if fm > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ExitCurve:
    """Sampled chart curve: points (ia, value) with ia strictly increasing.

    channel_q is set on variable-side curves, None on check-side ones.
    """

    points: tuple[tuple[float, float], ...]
    channel_q: float | None = None

    def to_csv(self) -> str:
        lines = ["ia,value"]
        for x, y in self.points:
            lines.append(f"{x:.17g},{y:.17g}")
        return "\n".join(lines) + "\n"


def sample_exit_chart(ens: Ensemble, q: float, npoints: int) -> tuple[ExitCurve, ExitCurve]:
    """Sample the two chart curves on a uniform I_A grid.

    The first curve is I_{E,V}(1 - ia, q) against ia; the second is the
    inverse check curve 1 - p(ia) where I_{E,C}(p) = ia, so successful
    decoding at q corresponds to the first lying above the second.
    """
    if npoints < 2:
        raise ValueError(f"npoints must be >= 2, got {npoints}")
    validate(ens)
    fv = vnd_evaluator(ens)
    step = 1.0 / (npoints - 1)
    grid = [i * step for i in range(npoints - 1)] + [1.0]
    vnd_points = tuple((ia, fv(1.0 - ia, q)) for ia in grid)
    cnd_points = tuple((ia, 1.0 - inverse_exit_cnd(ens, ia)) for ia in grid)
    return ExitCurve(vnd_points, channel_q=q), ExitCurve(cnd_points)
