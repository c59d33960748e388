"""Stability condition machinery: EXIT slopes at p = 0 and what they imply.

All slopes are taken with respect to the extrinsic erasure probability
p = 1 - I_A, evaluated at p = 0.  In that orientation the necessary
condition for successful decoding at channel erasure q reads

    slope_VND(q)  >=  1 / slope_CND,

with both sides negative.  Rearranged, the left side becomes

    lhs(q) = q lambda_2 + sum_i sum_z q^z (1-q)^(k_i-z) (2 lambda_i / n_i) D_i[z]

over the generalized variable types with minimum distance 2 (D_i is the
augmented rank-deficiency table of type i), and the right side

    rhs = 1 / (rho'_SPC(1) + sum_i (2 rho_i / n_i) D_i)

over the generalized check types with minimum distance 2.  Only
minimum-distance-2 component codes contribute anywhere.  When no
generalized variable type has minimum distance 2 the left side is linear
in q and the condition is the explicit threshold upper bound
q <= 1 / (lambda_2 * bracket); otherwise q cannot be factored out and the
condition is evaluated pointwise.

Derivatives are assembled in exact rational arithmetic from the integer
deficiency tables, so closed-form kinds and their generic re-declarations
produce identical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .codes import delta_params
from .ensembles import (
    Ensemble,
    component_code,
    is_generalized_check,
    is_generalized_variable,
    lambda2,
    node_min_distance_at_least,
    rho_spc_derivative_at_one,
    validate,
)
from .exit_charts import _bernoulli_weights, exit_cnd, exit_vnd

STABILITY_SLACK = 1e-12
TANGENCY_TOL = 1e-9
BOUNDARY_GRID = 10_000
BOUNDARY_TOL = 1e-10


class InverseSlopeUndefinedError(RuntimeError):
    """The check-side EXIT slope at p = 0 is zero, so its inverse has none."""


@dataclass(frozen=True)
class Applicability:
    """Which closed-form readings of the stability condition apply."""

    is_gldpc: bool
    all_var_dmin_ge3: bool
    all_chk_dmin_ge3: bool


@dataclass(frozen=True)
class StabilityCheck:
    """Pointwise evaluation of the stability inequality at one q."""

    holds: bool
    lhs: float
    rhs: float
    margin: float


@dataclass(frozen=True)
class BoundaryResult:
    """All q in [0, 1] where the stability inequality binds with equality.

    vacuous is set when the right side is infinite (the condition never
    binds and there is no boundary to find).
    """

    points: tuple[float, ...]
    vacuous: bool


@dataclass(frozen=True)
class DerivativeMatching:
    """Tangency diagnosis of the two chart curves at I_A = 1 (p = 0)."""

    endpoint_ok: bool
    slope_gap: float
    tangent_at_zero: bool


@dataclass(frozen=True)
class StabilityReport:
    """Slopes at p = 0, the threshold bound when expressible, and flags.

    gldpc_bound is None when minimum-distance-2 generalized variable nodes
    make the bound inexpressible, and +inf when the condition is vacuous.
    dmin2_check_terms / dmin2_var_terms hold the per-type contributions
    2*fraction*deficiency/n, aligned with the ensemble's type lists; only
    minimum-distance-2 generalized types have nonzero entries.
    """

    cnd_slope_at_zero: float
    vnd_slope_coeffs: tuple[float, ...]
    gldpc_bound: float | None
    dmin2_check_terms: tuple[float, ...]
    dmin2_var_terms: tuple[tuple[float, ...], ...]
    applicability: Applicability

    @property
    def cnd_slope_at_zero_ia(self) -> float:
        """The same slope taken with respect to I_A = 1 - p."""
        return -self.cnd_slope_at_zero

    @property
    def vnd_slope_coeffs_ia(self) -> tuple[float, ...]:
        return tuple(-c for c in self.vnd_slope_coeffs)

    def to_json_dict(self) -> dict:
        return {
            "cnd_slope_at_zero": self.cnd_slope_at_zero,
            "vnd_slope_fn": list(self.vnd_slope_coeffs),
            "gldpc_bound": self.gldpc_bound,
            "dmin2_check_terms": list(self.dmin2_check_terms),
            "dmin2_var_terms": [list(t) for t in self.dmin2_var_terms],
            "applicability": {
                "is_gldpc": self.applicability.is_gldpc,
                "all_var_dmin_ge3": self.applicability.all_var_dmin_ge3,
                "all_chk_dmin_ge3": self.applicability.all_chk_dmin_ge3,
            },
            "cnd_slope_at_zero_ia": self.cnd_slope_at_zero_ia,
            "vnd_slope_fn_ia": list(self.vnd_slope_coeffs_ia),
        }


def _dmin2_check_types(ens: Ensemble):
    for i, t in enumerate(ens.check_types):
        if is_generalized_check(t) and not node_min_distance_at_least(t, 3):
            yield i, t


def _dmin2_variable_types(ens: Ensemble):
    for i, t in enumerate(ens.variable_types):
        if is_generalized_variable(t) and not node_min_distance_at_least(t, 3):
            yield i, t


def _cnd_bracket(ens: Ensemble) -> Fraction:
    """rho'_SPC(1) + sum over d_min=2 generalized check types of 2 rho D / n."""
    total = rho_spc_derivative_at_one(ens)
    for _, t in _dmin2_check_types(ens):
        code = component_code(t)
        total += Fraction(t.edge_fraction) * 2 * delta_params(code).delta_n2 / code.n
    return total


def cnd_derivative_at_zero(ens: Ensemble) -> float:
    """Slope of the aggregate check-node EXIT at p = 0 (always <= 0).

    Types with minimum distance >= 3 contribute nothing.
    """
    validate(ens)
    return float(-_cnd_bracket(ens))


def vnd_derivative_at_zero(ens: Ensemble, q: float) -> float:
    """Slope in p of the aggregate variable-node EXIT at p = 0, for channel q.

    For GLDPC ensembles (all-repetition variable side) this is -q lambda_2.
    """
    validate(ens)
    acc = q * lambda2(ens)
    for _, t in _dmin2_variable_types(ens):
        code = component_code(t)
        deltas = delta_params(code).delta_n2_kz
        v = _bernoulli_weights(q, code.k + 1)
        inner = 0.0
        for z in range(code.k + 1):
            inner += deltas[z] * v[z]
        acc += (2 * t.edge_fraction / code.n) * inner
    return -acc


def vnd_slope_coefficients(ens: Ensemble) -> tuple[float, ...]:
    """The p = 0 variable-side slope as polynomial coefficients in q.

    Exact rational expansion of -q lambda_2 minus the minimum-distance-2
    contributions; coefficient m multiplies q^m.
    """
    validate(ens)
    degree = 1
    for _, t in _dmin2_variable_types(ens):
        degree = max(degree, component_code(t).k)
    coeffs = [Fraction(0)] * (degree + 1)
    coeffs[1] -= Fraction(lambda2(ens))
    for _, t in _dmin2_variable_types(ens):
        code = component_code(t)
        deltas = delta_params(code).delta_n2_kz
        scale = Fraction(t.edge_fraction) * 2 / code.n
        for z in range(code.k + 1):
            if deltas[z] == 0:
                continue
            for m in range(code.k - z + 1):
                coeffs[z + m] -= scale * deltas[z] * comb(code.k - z, m) * (-1) ** m
    return tuple(float(c) for c in coeffs)


def gldpc_stability_bound(ens: Ensemble) -> float | None:
    """The threshold upper bound 1 / (lambda_2 * bracket), when expressible.

    Returns +inf when the product is zero (the condition is vacuous) and
    None when a minimum-distance-2 generalized variable type prevents
    factoring q out of the inequality.
    """
    validate(ens)
    if any(True for _ in _dmin2_variable_types(ens)):
        return None
    denom = Fraction(lambda2(ens)) * _cnd_bracket(ens)
    if denom == 0:
        return math.inf
    return float(1 / denom)


def _stability_lhs(ens: Ensemble, q: float) -> float:
    return -vnd_derivative_at_zero(ens, q)


def dgldpc_stability_check(ens: Ensemble, q: float) -> StabilityCheck:
    """Evaluate both sides of the stability inequality at the given q."""
    validate(ens)
    lhs = _stability_lhs(ens, q)
    bracket = _cnd_bracket(ens)
    rhs = math.inf if bracket == 0 else float(1 / bracket)
    return StabilityCheck(
        holds=lhs <= rhs + STABILITY_SLACK,
        lhs=lhs,
        rhs=rhs,
        margin=rhs - lhs,
    )


def dgldpc_stability_boundary(ens: Ensemble) -> BoundaryResult:
    """All q in [0, 1] where lhs(q) = rhs, by grid scan plus bisection.

    The left side is a low-degree polynomial but need not be monotone, so
    every sign change on a 10^4 grid is refined to 1e-10 and all roots are
    returned sorted.
    """
    validate(ens)
    bracket = _cnd_bracket(ens)
    if bracket == 0:
        return BoundaryResult(points=(), vacuous=True)
    rhs = float(1 / bracket)

    def g(q: float) -> float:
        return _stability_lhs(ens, q) - rhs

    step = 1.0 / BOUNDARY_GRID
    roots: list[float] = []
    prev_q, prev_g = 0.0, g(0.0)
    if prev_g == 0.0:
        roots.append(0.0)
    for i in range(1, BOUNDARY_GRID + 1):
        cur_q = i * step
        cur_g = g(cur_q)
        if cur_g == 0.0:
            roots.append(cur_q)
        elif prev_g != 0.0 and (prev_g < 0.0) != (cur_g < 0.0):
            lo, hi = prev_q, cur_q
            glo = prev_g
            while hi - lo > BOUNDARY_TOL:
                mid = 0.5 * (lo + hi)
                gm = g(mid)
                if gm == 0.0:
                    lo = hi = mid
                    break
                if (gm < 0.0) == (glo < 0.0):
                    lo, glo = mid, gm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        prev_q, prev_g = cur_q, cur_g
    return BoundaryResult(points=tuple(sorted(roots)), vacuous=False)


def derivative_matching_check(ens: Ensemble, q: float) -> DerivativeMatching:
    """Compare the VND slope against the inverse CND slope at p = 0.

    slope_gap = dI_{E,V}/dp - 1/(dI_{E,C}/dp), both at p = 0; a gap of
    zero (within tolerance) is the tangency that makes the stability bound
    hold with equality.
    """
    validate(ens)
    cnd_slope = cnd_derivative_at_zero(ens)
    if cnd_slope == 0.0:
        raise InverseSlopeUndefinedError(
            "check-side EXIT slope at p=0 is zero; the inverse curve has no defined slope"
        )
    endpoint_ok = (
        abs(exit_vnd(ens, 0.0, q) - 1.0) <= STABILITY_SLACK
        and abs(exit_cnd(ens, 0.0) - 1.0) <= STABILITY_SLACK
    )
    slope_gap = vnd_derivative_at_zero(ens, q) - 1.0 / cnd_slope
    return DerivativeMatching(
        endpoint_ok=endpoint_ok,
        slope_gap=slope_gap,
        tangent_at_zero=abs(slope_gap) <= TANGENCY_TOL,
    )


def stability_report(ens: Ensemble) -> StabilityReport:
    """Assemble the full stability analysis of a validated ensemble."""
    validate(ens)
    check_terms = [0.0] * len(ens.check_types)
    for i, t in _dmin2_check_types(ens):
        code = component_code(t)
        check_terms[i] = float(
            Fraction(t.edge_fraction) * 2 * delta_params(code).delta_n2 / code.n
        )
    var_terms: list[tuple[float, ...]] = [()] * len(ens.variable_types)
    for i, t in _dmin2_variable_types(ens):
        code = component_code(t)
        deltas = delta_params(code).delta_n2_kz
        scale = Fraction(t.edge_fraction) * 2 / code.n
        var_terms[i] = tuple(float(scale * d) for d in deltas)
    applicability = Applicability(
        is_gldpc=all(t.kind == "repetition" for t in ens.variable_types),
        all_var_dmin_ge3=all(
            node_min_distance_at_least(t, 3)
            for t in ens.variable_types
            if is_generalized_variable(t)
        ),
        all_chk_dmin_ge3=all(
            node_min_distance_at_least(t, 3)
            for t in ens.check_types
            if is_generalized_check(t)
        ),
    )
    return StabilityReport(
        cnd_slope_at_zero=cnd_derivative_at_zero(ens),
        vnd_slope_coeffs=vnd_slope_coefficients(ens),
        gldpc_bound=gldpc_stability_bound(ens),
        dmin2_check_terms=tuple(check_terms),
        dmin2_var_terms=tuple(var_terms),
        applicability=applicability,
    )
