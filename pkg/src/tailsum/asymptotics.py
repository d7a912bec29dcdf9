"""Asymptotic expansions for the tail and quantile of a sum of two risks.

Given a Pareto marginal and a dependence structure (independence, an
extreme-value copula, or raw tail traits), this module evaluates:

* the singular integrals feeding the second-order constants
  (:func:`integral_I`, :func:`eta_delta`, :func:`eta_limit`,
  :func:`D_delta`, :func:`delta_correction`);
* the case classification of the extreme-value regime
  (:func:`classify_case`);
* first- plus second-order expansions of ``P(X + Y > t)``
  (:func:`tailprob_expansion_independence`, :func:`tailprob_expansion_ev`,
  :func:`tailprob_expansion_general`);
* first- plus second-order expansions of the ``q``-quantile of ``X + Y``
  (:func:`var_expansion_independence`, :func:`var_expansion_ev`) and a
  numerical inversion diagnostic (:func:`var_from_tailprob_inversion`).

Everything is a pure function of immutable inputs; quadrature scratch state
is local to each call, so concurrent use is safe.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Mapping, Optional

from scipy import integrate, optimize

from .copulas import (
    PartialLimitTraits,
    PickandsEV,
    TailOrderTraits,
    estimate_corner_slope,
    gumbel_log_refined_traits,
    tail_order_traits,
)
from .errors import (
    AmbiguousBranchError,
    BoundaryCaseError,
    DivergentIntegralError,
    DomainError,
)
from .marginals import ParetoMarginal

__all__ = [
    "CaseLabel",
    "ExpansionTerm",
    "Expansion",
    "VarExpansion",
    "InversionDiagnostic",
    "integral_I",
    "eta_delta",
    "eta_limit",
    "D_delta",
    "delta_correction",
    "power_term_coefficient",
    "classify_case",
    "tailprob_expansion_independence",
    "tailprob_expansion_ev",
    "tailprob_expansion_general",
    "var_expansion_independence",
    "var_expansion_ev",
    "var_from_tailprob_inversion",
]

_QUAD_KW = {"epsabs": 1e-13, "epsrel": 1e-12, "limit": 200}

LABEL_ALL = "C1∩C2∩C3"
LABEL_PARTIAL = "C1\\(C2∩C3)"
LABEL_COMPLEMENT = "C1ᶜ"


# ---------------------------------------------------------------------------
# Singular integrals
# ---------------------------------------------------------------------------


def integral_I(alpha: float, beta: float) -> float:
    """The corner integral ``beta * int_0^{1/2} ((1-y)**-alpha - 1) * y**(-beta-1) dy``.

    The integrand behaves like ``alpha * beta * y**-beta`` near the origin,
    so the integral converges exactly when ``beta < 1``. Evaluation
    substitutes ``y = z**(1/(1-beta))``, which removes the endpoint
    singularity, and applies adaptive quadrature to the resulting smooth
    integrand; the absolute accuracy target is 1e-10.

    Parameters
    ----------
    alpha : float
        Positive exponent of the ``(1-y)**-alpha`` factor.
    beta : float
        Exponent in ``[0, 1)``; the value 0 gives exactly 0.

    Raises
    ------
    DomainError
        If ``alpha <= 0`` or ``beta < 0``.
    DivergentIntegralError
        If ``beta >= 1``.
    """
    if not (alpha > 0):
        raise DomainError(f"integral_I requires alpha > 0, got {alpha}")
    if beta < 0:
        raise DomainError(f"integral_I requires beta >= 0, got {beta}")
    if beta >= 1:
        raise DivergentIntegralError(
            f"integral_I diverges for beta >= 1, got beta={beta}"
        )
    if beta == 0.0:
        return 0.0
    p = 1.0 / (1.0 - beta)
    z_top = 0.5 ** (1.0 / p)

    def g(z: float) -> float:
        y = z**p
        return beta * p * math.expm1(-alpha * math.log1p(-y)) / y

    value, _ = integrate.quad(g, 0.0, z_top, **_QUAD_KW)
    return value


def eta_delta(traits: TailOrderTraits, alpha: float, delta: float) -> float:
    """Truncated corner functional of the tail profile derivative.

    Returns ``alpha * int_delta^{1/2} (tau_v((1-y)**-alpha, y**-alpha)
    - tau_v(1, y**-alpha)) * y**(-alpha-1) dy`` by adaptive quadrature.
    Nonnegative because ``tau_v`` is nondecreasing in its first argument.

    Raises
    ------
    DomainError
        If ``alpha <= 0`` or ``delta`` lies outside ``(0, 1/2)``.
    """
    if not (alpha > 0):
        raise DomainError(f"eta_delta requires alpha > 0, got {alpha}")
    if not (0.0 < delta < 0.5):
        raise DomainError(f"eta_delta requires 0 < delta < 1/2, got {delta}")
    tau_v = traits.tau_v

    def g(y: float) -> float:
        grown = (1.0 - y) ** -alpha
        vv = y**-alpha
        return alpha * (float(tau_v(grown, vv)) - float(tau_v(1.0, vv))) * y ** (-alpha - 1.0)

    value, _ = integrate.quad(g, delta, 0.5, **_QUAD_KW)
    return value


def eta_limit(traits: TailOrderTraits, alpha: float) -> float:
    """Limit of :func:`eta_delta` as the truncation vanishes.

    For the shipped product-power profiles ``tau(u, v) = (u*v)**m`` the limit
    is finite exactly when ``alpha * m < 1``, where it equals
    ``integral_I(alpha*m, alpha*m)`` (independence is the case ``m = 1``).
    The comonotone profile gives exactly 0. For other traits the limit is
    probed numerically over truncations ``1e-2, 1e-3, 1e-4``, declaring
    divergence when the value grows by more than a factor 2 across
    successive decades.

    Returns
    -------
    float
        The limit value, or ``math.inf`` when divergent (never an exception).
    """
    if not (alpha > 0):
        raise DomainError(f"eta_limit requires alpha > 0, got {alpha}")
    if traits.power_m is not None and traits.family in ("independence", "gumbel"):
        am = alpha * traits.power_m
        if am >= 1.0:
            return math.inf
        return integral_I(am, am)
    if traits.family == "comonotone":
        return 0.0
    probes = [eta_delta(traits, alpha, d) for d in (1e-2, 1e-3, 1e-4)]
    tiny = 1e-300
    if abs(probes[2]) > 2.0 * max(abs(probes[1]), tiny) and abs(probes[1]) > 2.0 * max(
        abs(probes[0]), tiny
    ):
        return math.inf
    return probes[2]


def D_delta(traits: TailOrderTraits, marginal: ParetoMarginal, delta: float, t: float) -> float:
    """Finite-level weighting of the corner profile against the marginal.

    Returns ``int_delta^{1/2} (tau_v((1-y)**-alpha, y**-alpha)
    - tau_v(1, y**-alpha)) density(t*y) * t dy``. The ratio of this value to
    ``survival(t)`` approaches :func:`eta_delta` at the same truncation as
    ``t`` grows.

    Raises
    ------
    DomainError
        If ``delta`` lies outside ``(0, 1/2)`` or ``t`` is not above the
        marginal median.
    """
    if not (0.0 < delta < 0.5):
        raise DomainError(f"D_delta requires 0 < delta < 1/2, got {delta}")
    median = marginal.quantile(0.5)
    if not (t > median):
        raise DomainError(f"D_delta requires t above the marginal median {median}, got {t}")
    alpha = marginal.alpha
    tau_v = traits.tau_v

    def g(y: float) -> float:
        grown = (1.0 - y) ** -alpha
        vv = y**-alpha
        return (float(tau_v(grown, vv)) - float(tau_v(1.0, vv))) * marginal.density(t * y) * t

    value, _ = integrate.quad(g, delta, 0.5, **_QUAD_KW)
    return value


def delta_correction(
    partial_traits: PartialLimitTraits, marginal: ParetoMarginal, t: float
) -> float:
    """Finite-level second-order weight of the refined tail branch.

    Returns ``int_0^{1/2} ((1-y)**(-alpha*theta_exp) - 1)
    * varphi(1, survival(t*y)) * density(t*y) * t dy`` by adaptive
    quadrature. It decays to zero as ``t`` grows, which is what makes the
    branch term genuinely higher order.

    Raises
    ------
    DomainError
        If ``t`` is not above the marginal median.
    """
    median = marginal.quantile(0.5)
    if not (t > median):
        raise DomainError(
            f"delta_correction requires t above the marginal median {median}, got {t}"
        )
    a_theta = marginal.alpha * partial_traits.theta_exp
    varphi = partial_traits.varphi

    def g(y: float) -> float:
        sf = marginal.survival(t * y)
        return math.expm1(-a_theta * math.log1p(-y)) * float(varphi(1.0, sf)) * marginal.density(
            t * y
        ) * t

    # the integrand mass concentrates at y ~ scale/t, below quad's default
    # sampling resolution for large t; anchor subdivisions there
    y0 = marginal.scale / t
    breaks = sorted({min(0.499, y0 * 10.0**k) for k in range(6)})
    value, _ = integrate.quad(g, 0.0, 0.5, points=breaks, **_QUAD_KW)
    return value


def power_term_coefficient(traits: TailOrderTraits, alpha: float) -> float:
    """Second-order power-term coefficient ``tau(2**a, 2**a) - 2*tau(1, 2**a)``.

    For the product-power profile this equals
    ``2**(2*alpha*m) - 2**(alpha*m + 1)``; for the comonotone profile
    ``min`` it equals ``2**alpha - 2``.
    """
    two_a = 2.0**alpha
    return float(traits.tau(two_a, two_a)) - 2.0 * float(traits.tau(1.0, two_a))


# ---------------------------------------------------------------------------
# Case classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CaseLabel:
    """Which regime of the extreme-value expansion applies.

    Attributes
    ----------
    label : str
        Exactly one of ``"C1∩C2∩C3"``, ``"C1\\(C2∩C3)"``, ``"C1ᶜ"``, from
        the predicates ``C1: alpha*a2(1,0) < 1``, ``C2: alpha*a1(1,1) < 1``,
        ``C3: a(1,1) < a2(1,0) + 1``.
    c1, c2, c3 : bool
        The individual predicate values.
    a20 : float
        The corner slope ``a2(1, 0)`` used by the predicates (limit
        estimate, declared exactly 0 below the 1e-8 threshold).
    boundary_indicator : bool
        Whether ``a(1,1) == a2(1,0) + 1`` within 1e-9; only meaningful for
        extreme-value families.
    rho_regime : str or None
        Filled by the quantile expansions: ``"below"`` or ``"above"`` the
        case's threshold exponent (``"above"`` includes a boundary closure,
        flagged in the warnings). None for tail-probability use.
    warnings : tuple of str
        Notes attached when a predicate sits within 1e-8 of its boundary or
        the corner-slope probe did not stabilise.
    """

    label: str
    c1: bool
    c2: bool
    c3: bool
    a20: float
    boundary_indicator: bool
    rho_regime: Optional[str] = None
    warnings: tuple = ()


def classify_case(alpha: float, p: PickandsEV) -> CaseLabel:
    """Classify the extreme-value expansion regime for a tail index.

    The corner slope ``a2(1, 0)`` is estimated as the limit of ``a2(1, v)``
    over ``v`` in ``1e-4 .. 1e-10`` and declared exactly zero below 1e-8.
    Exactly one label is returned; predicates within 1e-8 of their boundary
    attach a warning but still classify.

    Raises
    ------
    DomainError
        If ``alpha`` is not positive.
    """
    if not (alpha > 0):
        raise DomainError(f"classify_case requires alpha > 0, got {alpha}")
    a20, probe_warning = estimate_corner_slope(p)
    a11 = float(p.a1_fn(1.0, 1.0))
    kap = float(p.a_fn(1.0, 1.0))

    c1 = alpha * a20 < 1.0
    c2 = alpha * a11 < 1.0
    c3 = kap < a20 + 1.0
    if c1 and c2 and c3:
        label = LABEL_ALL
    elif c1:
        label = LABEL_PARTIAL
    else:
        label = LABEL_COMPLEMENT

    warnings = []
    if probe_warning:
        warnings.append(probe_warning)
    if abs(alpha * a20 - 1.0) < 1e-8:
        warnings.append("within 1e-8 of the C1 boundary alpha*a2(1,0) = 1")
    if abs(alpha * a11 - 1.0) < 1e-8:
        warnings.append("within 1e-8 of the C2 boundary alpha*a1(1,1) = 1")
    if abs(kap - (a20 + 1.0)) < 1e-8:
        warnings.append("within 1e-8 of the C3 boundary a(1,1) = a2(1,0) + 1")

    return CaseLabel(
        label=label,
        c1=c1,
        c2=c2,
        c3=c3,
        a20=a20,
        boundary_indicator=abs(kap - (a20 + 1.0)) <= 1e-9,
        rho_regime=None,
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# Expansion value objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionTerm:
    """One second-order term: ``coefficient * sf**exponent * extra factors``.

    ``t_factor`` carries an evaluated t-dependent decaying factor (such as a
    truncated mean divided by t); ``sv_factor`` carries the evaluated slowly
    varying factor. Every term either has exponent strictly above 1 or a
    t-decaying factor, so the term vanishes relative to the leading order.

    ``value`` is the term's numeric contribution at the evaluation point.
    """

    coefficient: float
    exponent: float
    factor_tag: str = ""
    t_factor: Optional[float] = None
    sv_factor: float = 1.0
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.exponent <= 1.0 and self.t_factor is None:
            raise DomainError(
                "second-order term must have exponent above 1 or a t-decaying factor"
            )


@dataclass(frozen=True)
class Expansion:
    """Evaluated tail-probability expansion at one threshold.

    Attributes
    ----------
    t : float
        Threshold the expansion was evaluated at.
    value : float
        Leading order plus all second-order terms.
    first_order : float
        The leading order ``2 * survival(t)``.
    terms : tuple of ExpansionTerm
        The second-order terms (empty when they vanish).
    case : CaseLabel or None
        Regime label for extreme-value expansions.
    diagnostics : tuple of str
        Notes (degenerate second order, branch-selection evidence,
        boundary warnings).
    candidates : mapping or None
        When the stated second-order term vanishes, alternative refinements
        keyed by name (``"leading"``, ``"power_term"``,
        ``"power_term_with_eta"``, ``"log_refined"``); the primary ``value``
        stays the stated one.
    """

    t: float
    value: float
    first_order: float
    terms: tuple
    case: Optional[CaseLabel] = None
    diagnostics: tuple = ()
    candidates: Optional[Mapping[str, float]] = None


@dataclass(frozen=True)
class VarExpansion:
    """Evaluated quantile expansion at one probability level.

    Attributes
    ----------
    q : float
        Probability level.
    value : float
        First- plus second-order quantile of the sum.
    first_order : float
        The leading order ``2**(1/alpha) * quantile(q)``.
    case : CaseLabel or None
        Regime label (extreme-value runs), with ``rho_regime`` filled.
    diagnostics : tuple of str
        Notes (degenerate coefficients, boundary closures).
    """

    q: float
    value: float
    first_order: float
    case: Optional[CaseLabel] = None
    diagnostics: tuple = ()


@dataclass(frozen=True)
class InversionDiagnostic:
    """Consistency check between the quantile formula and tail inversion.

    ``inverted`` is the threshold where the tail-probability expansion
    crosses ``1 - q``; ``formula`` is the direct quantile expansion;
    ``discrepancy`` is their relative difference.
    """

    q: float
    formula: float
    inverted: float
    discrepancy: float


# ---------------------------------------------------------------------------
# Tail-probability expansions
# ---------------------------------------------------------------------------


def _require_above_median(m: ParetoMarginal, t: float, op: str) -> None:
    median = m.quantile(0.5)
    if not (t > median):
        raise DomainError(f"{op} requires t above the marginal median {median}, got {t}")


def tailprob_expansion_independence(m: ParetoMarginal, t: float) -> Expansion:
    """Second-order tail of the sum of two independent Pareto risks.

    For tail index below 1 the correction is a squared-survival term with
    coefficient ``2*integral_I(alpha, alpha) + 2**(2*alpha) -
    2**(alpha+1)``; for tail index at least 1 it is
    ``2*alpha*(truncated_mean(t)/t)*survival(t)``.

    Raises
    ------
    DomainError
        If ``t`` is not above the marginal median.
    """
    _require_above_median(m, t, "tailprob_expansion_independence")
    alpha = m.alpha
    s = m.survival(t)
    first = 2.0 * s
    if alpha < 1.0:
        coeff = 2.0 * integral_I(alpha, alpha) + 2.0 ** (2.0 * alpha) - 2.0 ** (alpha + 1.0)
        term = ExpansionTerm(
            coefficient=coeff, exponent=2.0, factor_tag="", t_factor=None,
            value=coeff * s * s,
        )
    else:
        tf = m.truncated_mean(t) / t
        coeff = 2.0 * alpha
        term = ExpansionTerm(
            coefficient=coeff, exponent=1.0, factor_tag="truncated_mean_over_t",
            t_factor=tf, value=coeff * tf * s,
        )
    return Expansion(
        t=t, value=first + term.value, first_order=first, terms=(term,),
        case=None, diagnostics=(), candidates=None,
    )


def _degenerate_candidates(
    m: ParetoMarginal, p: PickandsEV, t: float, s: float, kappa: float, mhat: float
) -> dict:
    """Alternative refinements when the stated second-order term vanishes."""
    alpha = m.alpha
    traits = tail_order_traits(p)
    delta2 = power_term_coefficient(traits, alpha)
    candidates = {
        "leading": 2.0 * s,
        "power_term": 2.0 * s + delta2 * s**kappa,
    }
    am = alpha * mhat
    if am < 1.0:
        zeta1 = 2.0 * integral_I(am, am) + 2.0 ** (2.0 * am) - 2.0 ** (am + 1.0)
        candidates["power_term_with_eta"] = 2.0 * s + zeta1 * s**kappa
    if p.family == "gumbel" and p.param is not None and p.param > 1.0:
        slow = gumbel_log_refined_traits(p.param)
        dt = delta_correction(slow, m, t)
        h_s = float(slow.h(s))
        candidates["log_refined"] = 2.0 * s + delta2 * s**kappa + 2.0 * dt * s * h_s
    return candidates


def tailprob_expansion_ev(m: ParetoMarginal, p: PickandsEV, t: float) -> Expansion:
    """Second-order tail of the sum of two Pareto risks under an
    extreme-value copula.

    Dispatches on :func:`classify_case`:

    * all three predicates hold: coefficient
      ``2*integral_I(a*m, a*m) + 2**(2*a*m) - 2**(a*m+1)`` (with
      ``m = a1(1,1)``) on the power ``a(1,1)`` of the survival;
    * first predicate only: coefficient ``2*integral_I(alpha, alpha*a20)``
      on the power ``a20 + 1``, plus the boundary-indicator term
      ``(2**(2*a*m) - 2**(a*m+1)) * sf**a(1,1)`` when
      ``a(1,1) == a20 + 1``;
    * first predicate fails: the truncated-mean form with the tail-power
      distribution of exponent ``a20``.

    When the middle case yields a zero coefficient and a false indicator the
    stated second order vanishes; the expansion then carries an explicit
    diagnostic and a ``candidates`` mapping of alternative refinements, with
    the primary value staying the stated one.

    Raises
    ------
    DomainError
        If ``t`` is not above the marginal median.
    """
    _require_above_median(m, t, "tailprob_expansion_ev")
    alpha = m.alpha
    case = classify_case(alpha, p)
    kappa = float(p.a_fn(1.0, 1.0))
    mhat = float(p.a1_fn(1.0, 1.0))
    a20 = case.a20
    s = m.survival(t)
    first = 2.0 * s
    diagnostics = list(case.warnings)
    candidates = None

    if case.label == LABEL_ALL:
        am = alpha * mhat
        zeta1 = 2.0 * integral_I(am, am) + 2.0 ** (2.0 * am) - 2.0 ** (am + 1.0)
        terms = (
            ExpansionTerm(coefficient=zeta1, exponent=kappa, value=zeta1 * s**kappa),
        )
    elif case.label == LABEL_PARTIAL:
        zeta2 = 2.0 * integral_I(alpha, alpha * a20)
        term_list = []
        if zeta2 != 0.0:
            term_list.append(
                ExpansionTerm(
                    coefficient=zeta2, exponent=a20 + 1.0, value=zeta2 * s ** (a20 + 1.0)
                )
            )
        if case.boundary_indicator:
            am = alpha * mhat
            coeff = 2.0 ** (2.0 * am) - 2.0 ** (am + 1.0)
            term_list.append(
                ExpansionTerm(coefficient=coeff, exponent=kappa, value=coeff * s**kappa)
            )
        if not term_list:
            diagnostics.append(
                "second-order term vanishes under the stated case conditions; "
                "candidate refinements attached"
            )
            candidates = _degenerate_candidates(m, p, t, s, kappa, mhat)
        terms = tuple(term_list)
    else:  # complement of the first predicate: a20 > 0 and alpha*a20 >= 1
        tf = m.powered_tail_truncated_mean(t, a20) / t
        coeff = 2.0 * alpha
        terms = (
            ExpansionTerm(
                coefficient=coeff, exponent=1.0,
                factor_tag="powered_truncated_mean_over_t", t_factor=tf,
                value=coeff * tf * s,
            ),
        )

    value = first + sum(term.value for term in terms)
    return Expansion(
        t=t, value=value, first_order=first, terms=terms, case=case,
        diagnostics=tuple(diagnostics), candidates=candidates,
    )


def tailprob_expansion_general(
    m: ParetoMarginal,
    tail_traits: TailOrderTraits,
    partial_traits: Optional[PartialLimitTraits],
    t: float,
    branch: str = "auto",
) -> Expansion:
    """Second-order tail of the sum from raw tail traits.

    Two branches exist. The ``"eta"`` branch uses the corner functional
    limit: ``2*sf + (2*eta + tau(2**a, 2**a) - 2*tau(1, 2**a)) * sf**kappa *
    ell(sf)``. The ``"partial"`` branch keeps the finite-level correction:
    ``2*sf + (tau(2**a, 2**a) - 2*tau(1, 2**a)) * sf**kappa * ell(sf)
    + 2*delta_correction(t) * sf**theta_exp * h(sf)``.

    With ``branch="auto"`` the eta branch is chosen when the eta limit is
    finite, the finite-level weighting ``D_delta(0.1, t)`` does not vanish,
    and (when partial traits are supplied) ``alpha*(1 - beta) < 1``;
    otherwise the partial branch is chosen when partial traits are
    available. If neither branch qualifies the choice is ambiguous and an
    explicit branch is required.

    Raises
    ------
    DomainError
        If ``t`` is not above the marginal median, the tail order is not
        above 1, or an explicit ``"partial"`` request lacks partial traits.
    DivergentIntegralError
        If an explicit ``"eta"`` request meets an infinite eta limit.
    AmbiguousBranchError
        If automatic selection cannot justify either branch.
    """
    _require_above_median(m, t, "tailprob_expansion_general")
    if branch not in ("auto", "eta", "partial"):
        raise DomainError(f"branch must be 'auto', 'eta', or 'partial', got {branch!r}")
    kappa = tail_traits.kappa
    if not (kappa > 1.0):
        raise DomainError(
            f"tail order must exceed 1 for a genuinely higher-order correction, got {kappa}"
        )
    alpha = m.alpha
    s = m.survival(t)
    first = 2.0 * s
    diagnostics = []

    chosen = branch
    eta = None
    if branch == "auto":
        eta = eta_limit(tail_traits, alpha)
        d_val = D_delta(tail_traits, m, 0.1, t)
        beta_ok = partial_traits is None or alpha * (1.0 - partial_traits.beta) < 1.0
        if math.isfinite(eta) and abs(d_val) > 1e-14 and beta_ok:
            chosen = "eta"
            diagnostics.append(
                f"auto-selected eta branch: eta={eta:.6g}, D(0.1,t)={d_val:.3e}"
            )
        elif partial_traits is not None:
            chosen = "partial"
            diagnostics.append(
                f"auto-selected partial branch: eta={eta:.6g}, D(0.1,t)={d_val:.3e}"
            )
        else:
            raise AmbiguousBranchError(
                "automatic branch selection is inconclusive "
                f"(eta={eta!r}, D(0.1,t)={d_val!r}, no partial traits); "
                "pass branch='eta' or branch='partial' explicitly"
            )

    ell_s = float(tail_traits.ell(s))
    base_coeff = power_term_coefficient(tail_traits, alpha)

    if chosen == "eta":
        if eta is None:
            eta = eta_limit(tail_traits, alpha)
        if not math.isfinite(eta):
            raise DivergentIntegralError(
                "eta branch requested but the eta limit diverges for these traits"
            )
        delta1 = 2.0 * eta + base_coeff
        term = ExpansionTerm(
            coefficient=delta1, exponent=kappa, sv_factor=ell_s,
            value=delta1 * s**kappa * ell_s,
        )
        terms = (term,)
    else:
        if partial_traits is None:
            raise DomainError("partial branch requires partial-limit traits")
        dt = delta_correction(partial_traits, m, t)
        theta = partial_traits.theta_exp
        h_s = float(partial_traits.h(s))
        term_power = ExpansionTerm(
            coefficient=base_coeff, exponent=kappa, sv_factor=ell_s,
            value=base_coeff * s**kappa * ell_s,
        )
        term_partial = ExpansionTerm(
            coefficient=2.0, exponent=theta, factor_tag="delta_correction",
            t_factor=dt, sv_factor=h_s, value=2.0 * dt * s**theta * h_s,
        )
        terms = (term_power, term_partial)

    value = first + sum(term.value for term in terms)
    return Expansion(
        t=t, value=value, first_order=first, terms=terms, case=None,
        diagnostics=tuple(diagnostics), candidates=None,
    )


# ---------------------------------------------------------------------------
# Quantile expansions
# ---------------------------------------------------------------------------


def _two_rv_var(m: ParetoMarginal, q: float) -> float:
    """Quantile of the sum in the regime driven by second-order regular
    variation of the marginal: ``2**(1/a) * Q(q) * (1 + (B/a) *
    (2**(-rho/a) - 1) * Q(q)**rho)``."""
    so = m.second_order_params()
    alpha, rho, b = so.alpha, so.rho, so.b_coeff
    x_q = m.quantile(q)
    return 2.0 ** (1.0 / alpha) * x_q * (
        1.0 + b / alpha * (2.0 ** (-rho / alpha) - 1.0) * x_q**rho
    )


def _check_q(q: float, op: str) -> None:
    if not (0.5 < q < 1.0):
        raise DomainError(f"{op} requires 0.5 < q < 1, got {q}")


def var_expansion_independence(m: ParetoMarginal, q: float) -> VarExpansion:
    """Second-order quantile of the sum of two independent Pareto risks.

    Case selection follows the stated inequalities on the tail index and the
    second-order index ``rho``: below 1 with ``rho < -alpha``, the
    ``(1-q)``-linear correction with coefficient
    ``(integral_I(a,a) + 2**(2a-1) - 2**a)/(2a)``; at least 1 with
    ``rho < -1``, the truncated-mean form; otherwise the complementary
    strip, handled by the second-order regular-variation formula. A tail
    index of exactly 1 sits on the case boundary (the Pareto second-order
    index ``rho = -1`` coincides with the threshold) and raises.

    Raises
    ------
    DomainError
        If ``q`` lies outside ``(0.5, 1)``.
    BoundaryCaseError
        If the parameters sit exactly on a case boundary (``alpha == 1``
        for the Pareto marginal).
    """
    _check_q(q, "var_expansion_independence")
    so = m.second_order_params()
    alpha, rho = so.alpha, so.rho
    x_q = m.quantile(q)
    first = 2.0 ** (1.0 / alpha) * x_q

    if rho == -alpha:
        raise BoundaryCaseError(
            f"second-order index rho={rho} equals -alpha exactly; the case "
            "dispatch is undefined on this boundary (perturb alpha or use Monte Carlo)"
        )
    if alpha < 1.0 and rho < -alpha:
        coeff = (integral_I(alpha, alpha) + 2.0 ** (2.0 * alpha - 1.0) - 2.0**alpha) / (
            2.0 * alpha
        )
        value = first * (1.0 + coeff * (1.0 - q))
        return VarExpansion(q=q, value=value, first_order=first, case=None, diagnostics=())
    if alpha >= 1.0 and rho < -1.0:
        value = first + m.truncated_mean(x_q)
        return VarExpansion(
            q=q, value=value, first_order=first, case=None,
            diagnostics=("truncated-mean correction regime",),
        )
    value = _two_rv_var(m, q)
    return VarExpansion(
        q=q, value=value, first_order=first, case=None,
        diagnostics=("second-order regular-variation strip",),
    )


def var_expansion_ev(m: ParetoMarginal, p: PickandsEV, q: float) -> VarExpansion:
    """Second-order quantile of the sum under an extreme-value copula.

    Dispatches on :func:`classify_case` and the stated threshold
    inequalities on the second-order index ``rho``:

    * all three predicates and ``rho < -alpha*(a(1,1)-1)``: correction
      ``(zeta1 * 2**(-a(1,1)) / alpha) * (1-q)**(a(1,1)-1)`` on the leading
      order, where ``zeta1`` is the tail-probability coefficient;
    * middle case and ``rho < -alpha*a20``: correction
      ``(c * 2**(-(a20+1)) / alpha) * (1-q)**a20`` with ``c`` the
      tail-probability coefficient including the boundary-indicator term;
      a vanishing ``c`` falls through to the regular-variation strip with a
      diagnostic;
    * complement case and ``rho < -1``: the powered truncated-mean form;
      equality ``rho == -1`` closes into the regular-variation strip with a
      warning (the threshold is exactly the Pareto second-order index);
    * otherwise (``rho`` above the threshold): the second-order
      regular-variation formula.

    Raises
    ------
    DomainError
        If ``q`` lies outside ``(0.5, 1)``.
    BoundaryCaseError
        If ``alpha == 1`` exactly (every threshold coincides with the
        Pareto ``rho``), or the parameters sit on a case-(i)/(ii)
        threshold equality.
    """
    _check_q(q, "var_expansion_ev")
    so = m.second_order_params()
    alpha, rho = so.alpha, so.rho
    if alpha == 1.0:
        raise BoundaryCaseError(
            "alpha=1 sits on the case boundary (the second-order index "
            "rho=-1 coincides with the dispatch threshold); perturb alpha "
            "or use Monte Carlo"
        )
    case = classify_case(alpha, p)
    kappa = float(p.a_fn(1.0, 1.0))
    mhat = float(p.a1_fn(1.0, 1.0))
    a20 = case.a20
    x_q = m.quantile(q)
    first = 2.0 ** (1.0 / alpha) * x_q
    diagnostics = list(case.warnings)

    def strip_value(extra_note: Optional[str] = None) -> VarExpansion:
        notes = diagnostics + (["second-order regular-variation strip"])
        if extra_note:
            notes.append(extra_note)
        labeled = dataclasses.replace(case, rho_regime="above")
        return VarExpansion(
            q=q, value=_two_rv_var(m, q), first_order=first, case=labeled,
            diagnostics=tuple(notes),
        )

    if case.label == LABEL_ALL:
        threshold = -alpha * (kappa - 1.0)
        if rho == threshold:
            raise BoundaryCaseError(
                f"rho={rho} sits exactly on the case threshold {threshold}; "
                "the dispatch is undefined on this boundary"
            )
        if rho < threshold:
            am = alpha * mhat
            zeta1 = 2.0 * integral_I(am, am) + 2.0 ** (2.0 * am) - 2.0 ** (am + 1.0)
            corr = zeta1 * 2.0**-kappa / alpha * (1.0 - q) ** (kappa - 1.0)
            labeled = dataclasses.replace(case, rho_regime="below")
            return VarExpansion(
                q=q, value=first * (1.0 + corr), first_order=first, case=labeled,
                diagnostics=tuple(diagnostics),
            )
        return strip_value()

    if case.label == LABEL_PARTIAL:
        threshold = -alpha * a20
        if rho == threshold:
            raise BoundaryCaseError(
                f"rho={rho} sits exactly on the case threshold {threshold}; "
                "the dispatch is undefined on this boundary"
            )
        if rho < threshold:
            c = 2.0 * integral_I(alpha, alpha * a20)
            if case.boundary_indicator:
                am = alpha * mhat
                c += 2.0 ** (2.0 * am) - 2.0 ** (am + 1.0)
            if c == 0.0:
                return strip_value(
                    "stated second-order coefficient vanishes; "
                    "regular-variation value returned"
                )
            corr = c * 2.0 ** -(a20 + 1.0) / alpha * (1.0 - q) ** a20
            labeled = dataclasses.replace(case, rho_regime="below")
            return VarExpansion(
                q=q, value=first * (1.0 + corr), first_order=first, case=labeled,
                diagnostics=tuple(diagnostics),
            )
        return strip_value()

    # complement case: alpha * a20 >= 1
    if rho < -1.0:
        value = first + m.powered_tail_truncated_mean(x_q, a20)
        labeled = dataclasses.replace(case, rho_regime="below")
        return VarExpansion(
            q=q, value=value, first_order=first, case=labeled,
            diagnostics=tuple(diagnostics + ["powered truncated-mean regime"]),
        )
    if rho == -1.0:
        return strip_value(
            "rho equals the complement-case threshold -1; closed into the "
            "regular-variation strip"
        )
    return strip_value()


def var_from_tailprob_inversion(
    m: ParetoMarginal, p: Optional[PickandsEV], q: float
) -> InversionDiagnostic:
    """Invert the tail-probability expansion and compare with the quantile
    formula.

    Finds the threshold where the evaluated tail expansion equals ``1 - q``
    by bracketed root finding, evaluates the direct quantile expansion at
    the same level, and reports their relative discrepancy. A small
    discrepancy says the two deliverables are mutually consistent; it does
    not by itself certify either against the true quantile.

    Parameters
    ----------
    m : ParetoMarginal
    p : PickandsEV or None
        None selects the independence expansions.
    q : float
        Probability level in ``(0.5, 1)``.

    Raises
    ------
    DomainError
        If no bracket for the root can be established.
    """
    _check_q(q, "var_from_tailprob_inversion")

    if p is None:
        def tail_value(t: float) -> float:
            return tailprob_expansion_independence(m, t).value

        formula = var_expansion_independence(m, q).value
    else:
        def tail_value(t: float) -> float:
            return tailprob_expansion_ev(m, p, t).value

        formula = var_expansion_ev(m, p, q).value

    target = 1.0 - q
    lo = m.quantile(q)
    hi = 4.0 * m.quantile(1.0 - target / 4.0) + 4.0 * m.scale
    f_lo = tail_value(lo) - target
    f_hi = tail_value(hi) - target
    tries = 0
    while f_lo * f_hi > 0 and tries < 60:
        hi *= 2.0
        f_hi = tail_value(hi) - target
        tries += 1
    if f_lo * f_hi > 0:
        raise DomainError(
            f"could not bracket the tail-expansion root for q={q}; "
            f"expansion may not cross {target}"
        )
    inverted = optimize.brentq(
        lambda t: tail_value(t) - target, lo, hi, xtol=1e-12 * max(1.0, lo), rtol=1e-14
    )
    discrepancy = abs(inverted - formula) / formula
    return InversionDiagnostic(q=q, formula=formula, inverted=inverted, discrepancy=discrepancy)
