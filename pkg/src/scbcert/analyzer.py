"""Decision procedures for boundedness step-size coefficients.

check_scb decides whether a given gamma > 0 is a step-size coefficient for
boundedness: the damped-root polynomial must satisfy the strict root
condition (stability-region interior membership) and the damped sequence
must be nonnegative at every index, proven by exact finite checks plus a
dominant-root tail certificate.  Infeasibility is certified by an exact or
interval negative witness, a stability violation, or a strictly dominant
complex conjugate pair with nonzero coefficient (which forces infinitely
many negative terms).  gamma_sup brackets the optimal coefficient between a
certified feasible and a certified infeasible rational, bisecting to the
requested tolerance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import poly, published, recursion
from .arith import IntervalScalar, precision_ladder
from .methods import Method, generating_polys, validate
from .poly import EnclosureError, RealRootEnclosure
from .recursion import (
    ClosedForm,
    MultipleRootError,
    RationalExponentialForm,
    TailCertificate,
    closed_form,
    mu_gamma_numerators,
    mu_prefix,
    rational_closed_form,
    run_mu_signs,
    tail_certificate,
    tau_prefix,
)

DEFAULT_DIGITS = 64
DEFAULT_DIGITS_CAP = 20000
EXACT_SCAN_CAP = 8192


class AnalyzerError(RuntimeError):
    pass


class Feasibility(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    INCONCLUSIVE = "inconclusive"


class Existence(enum.Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"
    INCONCLUSIVE = "inconclusive"


class Mechanism(enum.Enum):
    CROSSOVER = "crossover"
    SIMPLE_ROOT = "simple_root"
    UNBOUNDED = "unbounded"
    NONE_POSITIVE = "none_positive"


class StabilityAnswer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


# ---------------------------------------------------------------------------
# evidence payloads
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FeasibleCert:
    checked_through: int
    zero_indices: Tuple[int, ...]
    tail: Optional[TailCertificate] = None
    exact_form: Optional[RationalExponentialForm] = None

    kind = "feasible_certificate"


@dataclass(frozen=True)
class InfeasibleWitness:
    n: int
    value: str  # exact rational, or certified-negative interval endpoints
    exact: bool

    kind = "negative_witness"


@dataclass(frozen=True)
class InfeasibleStability:
    reason: str

    kind = "stability_violation"


@dataclass(frozen=True)
class InfeasibleComplexDominance:
    pair_modulus: Tuple[str, str]
    others_modulus_max: str
    coeff_modulus: Tuple[str, str]

    kind = "complex_dominance"


@dataclass(frozen=True)
class InconclusiveHorizon:
    n_max: int
    digits: int

    kind = "horizon_exhausted"


Evidence = Union[
    FeasibleCert,
    InfeasibleWitness,
    InfeasibleStability,
    InfeasibleComplexDominance,
    InconclusiveHorizon,
]


@dataclass(frozen=True)
class ScbVerdict:
    status: Feasibility
    method_name: str
    gamma: Fraction
    evidence: Evidence
    horizon_used: int
    digits_used: int


@dataclass(frozen=True)
class ExistenceVerdict:
    status: Existence
    method_name: str
    n0: int
    evidence: Union[FeasibleCert, InfeasibleWitness, InconclusiveHorizon]
    only_circle_root_is_one: Optional[bool]
    horizon_used: int


@dataclass(frozen=True)
class NonePositiveProof:
    witness_n: int
    interval_hi: Fraction  # the member function is negative on (0, interval_hi]


@dataclass(frozen=True)
class CrossoverBound:
    lo: Fraction
    hi: Fraction
    # certified root-modulus ordering at the endpoints
    real_dominant_at_lo: bool = True
    pair_dominant_at_hi: bool = True


@dataclass(frozen=True)
class SimpleRootBound:
    enclosure: RealRootEnclosure
    n: int


@dataclass
class GammaSupResult:
    method_name: str
    mechanism: Mechanism
    mechanism_index: Optional[int] = None
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    cert_lo: Optional[ScbVerdict] = None
    cert_hi: Optional[ScbVerdict] = None
    poly_check: Optional[str] = None
    crossover_bound: Optional[CrossoverBound] = None
    ladder: Tuple[Fraction, ...] = ()
    none_positive: Optional[NonePositiveProof] = None
    tol: Optional[Fraction] = None

    @property
    def enclosure(self) -> Optional[Tuple[Fraction, Fraction]]:
        if self.lo is None or self.hi is None:
            return None
        return (self.lo, self.hi)


# ---------------------------------------------------------------------------
# stability-region interior membership
# ---------------------------------------------------------------------------


def damped_root_poly(m: Method, lam: Fraction) -> List[Fraction]:
    """rho - lambda*sigma as a rational coefficient list."""
    gp = generating_polys(m)
    rho = list(gp.rho)
    sigma = [Fraction(0)] * (len(rho) - len(gp.sigma)) + list(gp.sigma)
    return [r - Fraction(lam) * s for r, s in zip(rho, sigma)]


def in_stability_interior(
    m: Method,
    lam: Fraction,
    digits: int = DEFAULT_DIGITS,
    digits_cap: int = DEFAULT_DIGITS_CAP,
) -> StabilityAnswer:
    """Exact interior test: nonzero leading coefficient and every root of
    rho - lambda*sigma strictly inside the unit circle."""
    lam = Fraction(lam)
    if 1 - lam * m.b0 == 0:
        return StabilityAnswer.NO
    p = damped_root_poly(m, lam)
    if poly.degree(poly.strip(p)) < 1:
        return StabilityAnswer.NO
    try:
        inside = poly.all_roots_strictly_inside(p, digits, digits_cap)
    except EnclosureError:
        return StabilityAnswer.UNKNOWN
    return StabilityAnswer.YES if inside else StabilityAnswer.NO


# ---------------------------------------------------------------------------
# the feasibility test (is gamma a boundedness step-size coefficient?)
# ---------------------------------------------------------------------------


def _interval_str(v: IntervalScalar) -> Tuple[str, str]:
    return (str(v.lo_fraction()), str(v.hi_fraction()))


def _dominance_split(cf: ClosedForm) -> Tuple[Optional[int], Optional[str]]:
    """Dominant class index plus its kind ('real' or 'pair'), when certified."""
    di = cf.dominant_index()
    if di is None:
        return None, None
    return di, "pair" if cf.roots[di].is_pair else "real"


def check_scb(
    m: Method,
    gamma: Fraction,
    horizon: Optional[int] = None,
    digits: int = DEFAULT_DIGITS,
    digits_cap: int = DEFAULT_DIGITS_CAP,
) -> ScbVerdict:
    """Certified three-way feasibility verdict for a rational gamma > 0."""
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise AnalyzerError("gamma must be positive")
    if horizon is None:
        horizon = max(32, 4 * m.k)
    digits_used = digits

    st = in_stability_interior(m, -gamma, min(digits, 64), digits_cap)
    if st is StabilityAnswer.NO:
        return ScbVerdict(
            Feasibility.INFEASIBLE,
            m.name,
            gamma,
            InfeasibleStability(
                "root condition of the damped polynomial fails strictly at -gamma"
            ),
            horizon,
            digits_used,
        )
    if st is StabilityAnswer.UNKNOWN:
        return ScbVerdict(
            Feasibility.INCONCLUSIVE,
            m.name,
            gamma,
            InconclusiveHorizon(0, digits_cap),
            horizon,
            digits_cap,
        )

    # exact prefix scan: cheap witnesses, and exact zero detection
    prefix_n = min(horizon, max(2 * m.k + 4, 16))
    mus = mu_prefix(m, gamma, prefix_n)
    for n in range(1, prefix_n + 1):
        if mus[n] < 0:
            return ScbVerdict(
                Feasibility.INFEASIBLE,
                m.name,
                gamma,
                InfeasibleWitness(n, str(mus[n]), True),
                horizon,
                digits_used,
            )

    multiple_root = False
    for dig in precision_ladder(min(digits, 64), digits_cap):
        digits_used = max(digits_used, dig)
        try:
            cf = closed_form(m, gamma, "mu", dig, dig)
        except MultipleRootError:
            multiple_root = True
            break
        except (EnclosureError, recursion.ArithmeticDomainError):
            continue
        if cf.order == 0:
            # identically zero beyond the window; the exact prefix was clean
            zeros = tuple(n for n in range(1, prefix_n + 1) if mus[n] == 0)
            return ScbVerdict(
                Feasibility.FEASIBLE,
                m.name,
                gamma,
                FeasibleCert(max(prefix_n, cf.window_start), zeros, None, None),
                horizon,
                digits_used,
            )
        di, kind = _dominance_split(cf)
        if di is None:
            continue
        if kind == "real":
            dom = cf.roots[di]
            c_box = cf.coeffs[di]
            if dom.box.re.hi_fraction() < 0 or c_box.re.hi_fraction() < 0:
                break  # dominant term eventually negative: witness scan below
            tc = tail_certificate(cf)
            if tc is None:
                continue
            n_check = max(tc.n_start - 1, 0)
            if n_check > prefix_n:
                if n_check > EXACT_SCAN_CAP:
                    break  # unreasonable finite range; fall back to scanning
                mus = mu_prefix(m, gamma, n_check)
            for n in range(1, n_check + 1):
                if mus[n] < 0:
                    return ScbVerdict(
                        Feasibility.INFEASIBLE,
                        m.name,
                        gamma,
                        InfeasibleWitness(n, str(mus[n]), True),
                        horizon,
                        digits_used,
                    )
            # interval consistency pass over the requested horizon
            if horizon > tc.n_start:
                run = run_mu_signs(m, gamma, horizon, dig)
                if run.negative:
                    raise AnalyzerError(
                        "soundness violation: certified tail contradicts a "
                        "certified negative term at n={}".format(run.negative[0])
                    )
            zeros = tuple(n for n in range(1, len(mus)) if mus[n] == 0)
            if any(n >= tc.n_start for n in zeros):
                raise AnalyzerError(
                    "soundness violation: exact zero inside the certified tail"
                )
            return ScbVerdict(
                Feasibility.FEASIBLE,
                m.name,
                gamma,
                FeasibleCert(max(n_check, horizon), zeros, tc, None),
                horizon,
                digits_used,
            )
        if kind == "pair":
            c_box = cf.coeffs[di]
            if c_box.abs_sq().lo_fraction() > 0:
                evidence = InfeasibleComplexDominance(
                    pair_modulus=_interval_str(cf.roots[di].modulus()),
                    others_modulus_max=str(
                        max(
                            (
                                rec.modulus().hi_fraction()
                                for i, rec in enumerate(cf.roots)
                                if i != di
                            ),
                            default=Fraction(0),
                        )
                    ),
                    coeff_modulus=_interval_str(c_box.modulus()),
                )
                if horizon > prefix_n:
                    run = run_mu_signs(
                        m, gamma, horizon, max(digits, dig), stop_at_negative=True
                    )
                    digits_used = max(digits_used, run.digits)
                    if run.first_negative is not None:
                        n = run.first_negative
                        return ScbVerdict(
                            Feasibility.INFEASIBLE,
                            m.name,
                            gamma,
                            InfeasibleWitness(n, "certified negative enclosure", False),
                            horizon,
                            digits_used,
                        )
                return ScbVerdict(
                    Feasibility.INFEASIBLE, m.name, gamma, evidence, horizon, digits_used
                )
            continue  # coefficient box still contains zero: sharpen

    if multiple_root:
        form = rational_closed_form(m, gamma, "mu")
        if form is not None:
            if form.all_terms_nonnegative():
                upto = max(prefix_n, form.window_start)
                mus = mu_prefix(m, gamma, upto)
                neg = next((n for n in range(1, upto + 1) if mus[n] < 0), None)
                if neg is None:
                    zeros = tuple(n for n in range(1, upto + 1) if mus[n] == 0)
                    return ScbVerdict(
                        Feasibility.FEASIBLE,
                        m.name,
                        gamma,
                        FeasibleCert(max(upto, horizon), zeros, None, form),
                        horizon,
                        digits_used,
                    )
                return ScbVerdict(
                    Feasibility.INFEASIBLE,
                    m.name,
                    gamma,
                    InfeasibleWitness(neg, str(mus[neg]), True),
                    horizon,
                    digits_used,
                )

    # fallback: certified witness scan over the horizon
    for dig in precision_ladder(digits, digits_cap):
        digits_used = max(digits_used, dig)
        run = run_mu_signs(m, gamma, horizon, dig, stop_at_negative=True)
        if run.first_negative is not None:
            return ScbVerdict(
                Feasibility.INFEASIBLE,
                m.name,
                gamma,
                InfeasibleWitness(run.first_negative, "certified negative enclosure", False),
                horizon,
                digits_used,
            )
        if run.all_certified:
            break
    return ScbVerdict(
        Feasibility.INCONCLUSIVE,
        m.name,
        gamma,
        InconclusiveHorizon(horizon, digits_used),
        horizon,
        digits_used,
    )


# ---------------------------------------------------------------------------
# existence of any positive step-size coefficient
# ---------------------------------------------------------------------------


def _only_circle_root_is_one(rho: Sequence[Fraction]) -> bool:
    """Exact test: the only root of rho with modulus 1 is 1 itself."""
    ip = poly.to_integer(rho)
    seen_one = False
    for q, _mult in poly.yun_squarefree(ip):
        qq = poly._strip_zero_roots(q)
        if poly.degree(qq) < 1:
            continue
        count, has_one, has_minus_one, _h = poly.unit_circle_roots(qq)
        if has_minus_one:
            return False
        if count != (1 if has_one else 0):
            return False
        if has_one:
            if seen_one:
                return False  # repeated root at 1 across factors
            seen_one = True
    return seen_one


def scb_exists(
    m: Method,
    horizon: Optional[int] = None,
    digits: int = DEFAULT_DIGITS,
    digits_cap: int = DEFAULT_DIGITS_CAP,
) -> ExistenceVerdict:
    """Existence test for a positive boundedness step-size coefficient."""
    report = validate(m)
    if not report.ok:
        raise AnalyzerError(
            "method fails the standing assumptions: "
            + "; ".join(c.name for c in report.failures())
        )
    from .methods import n0 as n0_of

    n_zero = n0_of(m)
    if horizon is None:
        horizon = max(64, 8 * m.k)
    taus = tau_prefix(m, horizon)

    # disproof: a nonpositive term at a multiple of the first nonzero index
    for n in range(n_zero, horizon + 1, n_zero):
        if taus[n] <= 0:
            return ExistenceVerdict(
                Existence.NOT_EXISTS,
                m.name,
                n_zero,
                InfeasibleWitness(n, str(taus[n]), True),
                None,
                horizon,
            )

    rho = list(generating_polys(m).rho)
    circle_ok = _only_circle_root_is_one(rho)
    if circle_ok:
        tc = None
        try:
            cf = closed_form(m, None, "tau", digits, digits_cap)
            tc = tail_certificate(cf)
        except (MultipleRootError, EnclosureError):
            tc = None
        if tc is not None:
            n_check = tc.n_start - 1
            if n_check > horizon:
                taus = tau_prefix(m, n_check)
            bad = next(
                (n for n in range(n_zero, n_check + 1) if taus[n] <= 0), None
            )
            if bad is None:
                return ExistenceVerdict(
                    Existence.EXISTS,
                    m.name,
                    n_zero,
                    FeasibleCert(max(n_check, horizon), (), tc, None),
                    True,
                    horizon,
                )
            if bad % n_zero == 0:
                return ExistenceVerdict(
                    Existence.NOT_EXISTS,
                    m.name,
                    n_zero,
                    InfeasibleWitness(bad, str(taus[bad]), True),
                    True,
                    horizon,
                )
    return ExistenceVerdict(
        Existence.INCONCLUSIVE,
        m.name,
        n_zero,
        InconclusiveHorizon(horizon, digits),
        circle_ok,
        horizon,
    )


# ---------------------------------------------------------------------------
# upper-bound mechanisms
# ---------------------------------------------------------------------------


def simple_root_bound(m: Method, n_scan: int) -> Optional[SimpleRootBound]:
    """Smallest positive simple root of any member function gamma -> mu_n(gamma)
    for n <= n_scan, certified through its exact numerator polynomial."""
    if n_scan < 1:
        raise AnalyzerError("n_scan must be at least 1")
    nums = mu_gamma_numerators(m, n_scan)
    best: Optional[Tuple[RealRootEnclosure, int]] = None
    for n in range(1, n_scan + 1):
        num = poly.to_integer(nums[n])
        if poly.degree(num) < 1:
            continue
        for enc in poly.isolate_real_roots(num):
            if enc.multiplicity != 1:
                continue  # derivative vanishes too: bound not applicable
            if enc.hi <= 0:
                continue
            if poly.sign_at_fraction(list(enc.poly), Fraction(0)) == 0:
                if enc.contains(Fraction(0)):
                    continue  # this enclosure's root is zero itself
                cand = enc
            else:
                cand = poly.refine_away_from_zero(enc)
                if cand.hi <= 0:
                    continue
            cand = poly.refine(cand, Fraction(1, 10**30))
            if best is None or cand.hi < best[0].lo:
                best = (cand, n)
    if best is None:
        return None
    return SimpleRootBound(best[0], best[1])


def _dominance_gap_sign(
    m: Method,
    gamma: Fraction,
    digits: int,
    digits_cap: int,
) -> Optional[int]:
    """+1 when the largest positive real root strictly dominates every complex
    pair, -1 when some pair strictly dominates every real root; None when the
    ordering cannot be certified (e.g. at the crossover itself)."""
    for dig in precision_ladder(digits, digits_cap):
        try:
            cf = closed_form(m, gamma, "mu", dig, dig)
        except MultipleRootError:
            return None
        except (EnclosureError, recursion.ArithmeticDomainError):
            continue
        real_pos = [
            rec.modulus() for rec in cf.roots if not rec.is_pair and rec.box.re.lo_fraction() > 0
        ]
        pairs = [rec.modulus() for rec in cf.roots if rec.is_pair]
        if not pairs:
            return 1 if real_pos else None
        if not real_pos:
            return -1
        rmax_lo = max(v.lo_fraction() for v in real_pos)
        rmax_hi = max(v.hi_fraction() for v in real_pos)
        pmax_lo = max(v.lo_fraction() for v in pairs)
        pmax_hi = max(v.hi_fraction() for v in pairs)
        if rmax_lo > pmax_hi:
            return 1
        if pmax_lo > rmax_hi:
            return -1
    return None


def crossover(
    m: Method,
    search_lo: Fraction,
    search_hi: Fraction,
    tol: Fraction = Fraction(1, 10**7),
    digits: int = DEFAULT_DIGITS,
    digits_cap: int = DEFAULT_DIGITS_CAP,
) -> Optional[CrossoverBound]:
    """Certified bracket of the parameter where the positive real dominant
    root's modulus is overtaken by the largest complex-pair modulus.

    The returned interval has certified strict orderings at its endpoints
    (real side dominant at lo, pair side dominant at hi); absent when no
    such bracket exists on the search interval.
    """
    lo, hi = Fraction(search_lo), Fraction(search_hi)
    if not 0 <= lo < hi:
        raise AnalyzerError("invalid search interval")

    def gap(g: Fraction) -> Optional[int]:
        if g <= 0:
            return None
        return _dominance_gap_sign(m, g, digits, digits_cap)

    def gap_perturbed(a: Fraction, b: Fraction, point: Fraction) -> Tuple[Fraction, Optional[int]]:
        s = gap(point)
        step = (b - a) / 16
        k = 1
        while s is None and k <= 4:
            for cand in (point + k * step, point - k * step):
                if a < cand < b:
                    s = gap(cand)
                    if s is not None:
                        point = cand
                        break
            k += 1
        return point, s

    p_lo, s_lo = gap_perturbed(lo, hi, lo if lo > 0 else lo + (hi - lo) / 64)
    p_hi, s_hi = gap_perturbed(lo, hi, hi - (hi - lo) / 1024)
    if s_lo != 1 or s_hi != -1:
        return None
    lo, hi = p_lo, p_hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        mid2, s = gap_perturbed(lo, hi, mid)
        if s is None:
            break
        if s == 1:
            lo = mid2
        else:
            hi = mid2
    return CrossoverBound(lo=lo, hi=hi)


def infeasible_by_complex_dominance(
    m: Method,
    gamma: Fraction,
    digits: int = DEFAULT_DIGITS,
    digits_cap: int = DEFAULT_DIGITS_CAP,
) -> Optional[InfeasibleComplexDominance]:
    """Certificate that a strictly dominant complex pair with nonzero
    coefficient exists at gamma (so gamma is not a boundedness step-size
    coefficient, and neither is anything above it)."""
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise AnalyzerError("gamma must be positive")
    for dig in precision_ladder(digits, digits_cap):
        try:
            cf = closed_form(m, gamma, "mu", dig, dig)
        except MultipleRootError:
            return None
        except (EnclosureError, recursion.ArithmeticDomainError):
            continue
        di, kind = _dominance_split(cf)
        if di is None:
            continue
        if kind != "pair":
            return None
        c_box = cf.coeffs[di]
        if c_box.abs_sq().lo_fraction() > 0:
            return InfeasibleComplexDominance(
                pair_modulus=_interval_str(cf.roots[di].modulus()),
                others_modulus_max=str(
                    max(
                        (rec.modulus().hi_fraction() for i, rec in enumerate(cf.roots) if i != di),
                        default=Fraction(0),
                    )
                ),
                coeff_modulus=_interval_str(c_box.modulus()),
            )
        # coefficient not yet separated from zero: escalate
    return None


# ---------------------------------------------------------------------------
# the optimal coefficient
# ---------------------------------------------------------------------------


@dataclass
class GammaSupOptions:
    digits: int = DEFAULT_DIGITS
    digits_cap: int = DEFAULT_DIGITS_CAP
    horizon: Optional[int] = None
    ladder_cap: Fraction = Fraction(2**20)
    eps_min: Fraction = Fraction(1, 2**40)
    compute_crossover: bool = False
    crossover_tol: Fraction = Fraction(1, 10**7)
    verify_published: bool = True


def _certify_none_positive(
    m: Method, verdict: ScbVerdict, options: GammaSupOptions
) -> Optional[NonePositiveProof]:
    """Try to prove that no gamma in (0, verdict.gamma] is feasible, using the
    exact member-function numerator of the witness index."""
    ev = verdict.evidence
    if not isinstance(ev, InfeasibleWitness):
        return None
    n = ev.n
    nums = mu_gamma_numerators(m, n)
    num = poly.to_integer_signed(nums[n])
    g = verdict.gamma
    if poly.sign_at_fraction(num, g) >= 0:
        return None
    if poly.count_real_roots(num, Fraction(0), g) != 0:
        return None
    # negative at g and no zero in (0, g]: negative on the whole interval;
    # monotonicity then rules out every larger gamma as well
    return NonePositiveProof(witness_n=n, interval_hi=g)


def gamma_sup(
    m: Method,
    tol: Fraction = Fraction(1, 10**9),
    options: Optional[GammaSupOptions] = None,
) -> GammaSupResult:
    """Certified enclosure of the optimal boundedness step-size coefficient.

    The lower endpoint carries a full feasibility certificate and the upper
    endpoint an infeasibility certificate; by downward inheritance of
    feasibility these bracket the supremum.  Unbounded and none-positive
    outcomes are reported through their own mechanisms.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise AnalyzerError("tol must be positive")
    opts = options or GammaSupOptions()

    def feas(g: Fraction) -> ScbVerdict:
        v = check_scb(m, g, opts.horizon, opts.digits, opts.digits_cap)
        if v.status is Feasibility.INCONCLUSIVE:
            # one retry with a deeper horizon before giving up
            v = check_scb(
                m,
                g,
                max(4 * (opts.horizon or 32), 512),
                opts.digits,
                opts.digits_cap,
            )
        if v.status is Feasibility.INCONCLUSIVE:
            raise AnalyzerError(
                "feasibility test inconclusive at gamma={} (horizon/precision caps)".format(g)
            )
        return v

    # seed probe at gamma = 1, then ladder up or down
    ladder: List[Fraction] = []
    g = Fraction(1)
    v = feas(g)
    if v.status is Feasibility.FEASIBLE:
        lo, cert_lo = g, v
        ladder.append(g)
        while True:
            g = g * 2
            if g > opts.ladder_cap:
                return GammaSupResult(
                    method_name=m.name,
                    mechanism=Mechanism.UNBOUNDED,
                    lo=ladder[-1],
                    hi=None,
                    cert_lo=cert_lo,
                    ladder=tuple(ladder),
                    tol=tol,
                )
            v = feas(g)
            if v.status is Feasibility.FEASIBLE:
                ladder.append(g)
                lo, cert_lo = g, v
            else:
                hi, cert_hi = g, v
                break
    else:
        proof = _certify_none_positive(m, v, opts)
        if proof is not None:
            return GammaSupResult(
                method_name=m.name,
                mechanism=Mechanism.NONE_POSITIVE,
                none_positive=proof,
                cert_hi=v,
                tol=tol,
            )
        hi, cert_hi = g, v
        while True:
            g = g / 2
            if g < opts.eps_min:
                proof = _certify_none_positive(m, cert_hi, opts)
                if proof is not None:
                    return GammaSupResult(
                        method_name=m.name,
                        mechanism=Mechanism.NONE_POSITIVE,
                        none_positive=proof,
                        cert_hi=cert_hi,
                        tol=tol,
                    )
                raise AnalyzerError(
                    "no feasible gamma found above {} and no none-positive proof".format(
                        opts.eps_min
                    )
                )
            v = feas(g)
            if v.status is Feasibility.FEASIBLE:
                lo, cert_lo = g, v
                break
            hi, cert_hi = g, v
            proof = _certify_none_positive(m, v, opts)
            if proof is not None:
                return GammaSupResult(
                    method_name=m.name,
                    mechanism=Mechanism.NONE_POSITIVE,
                    none_positive=proof,
                    cert_hi=v,
                    tol=tol,
                )

    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = feas(mid)
        if v.status is Feasibility.FEASIBLE:
            lo, cert_lo = mid, v
        else:
            hi, cert_hi = mid, v

    mechanism = Mechanism.CROSSOVER
    mech_index: Optional[int] = None
    ev = cert_hi.evidence
    if isinstance(ev, InfeasibleWitness):
        mechanism = Mechanism.SIMPLE_ROOT
        mech_index = ev.n
    result = GammaSupResult(
        method_name=m.name,
        mechanism=mechanism,
        mechanism_index=mech_index,
        lo=lo,
        hi=hi,
        cert_lo=cert_lo,
        cert_hi=cert_hi,
        tol=tol,
    )
    if opts.verify_published and m.name in published.GAMMA_SUP_POLYS:
        entry = published.GAMMA_SUP_POLYS[m.name]
        outcome = verify_against_poly(result, entry["poly"], entry["selector"])
        result.poly_check = outcome
    if opts.compute_crossover:
        upper = hi * 2
        bound = crossover(m, hi, max(upper, hi + 1), tol=opts.crossover_tol,
                          digits=opts.digits, digits_cap=opts.digits_cap)
        result.crossover_bound = bound
    return result


# ---------------------------------------------------------------------------
# confirmation against published defining polynomials
# ---------------------------------------------------------------------------


def _root_in_closed_interval(
    enc: RealRootEnclosure, lo: Fraction, hi: Fraction
) -> bool:
    """Exact membership test of an isolated root in [lo, hi]."""
    cur = enc
    p = list(enc.poly)
    for endpoint in (lo, hi):
        if poly.sign_at_fraction(p, endpoint) == 0 and cur.contains(endpoint):
            return True  # the isolated root is the endpoint itself
    while True:
        if lo <= cur.lo and cur.hi <= hi:
            return True
        if cur.hi < lo or cur.lo > hi:
            return False
        cur = poly.refine(cur, cur.width() / 4)


def verify_against_poly(
    result: GammaSupResult, p: Sequence[int], selector: str = "smallest"
) -> str:
    """'confirmed' when the designated real root of p lies in the enclosure
    and is the only root of p there; 'refuted' otherwise."""
    if result.lo is None or result.hi is None:
        raise AnalyzerError("result has no finite enclosure")
    lo, hi = result.lo, result.hi
    p = poly.strip(list(p))
    encs = poly.isolate_real_roots(p)
    if selector == "unique":
        if len(encs) != 1:
            return "refuted"
        chosen = encs[0]
    elif selector == "smaller":
        if len(encs) != 2:
            return "refuted"
        chosen = encs[0]
    elif selector == "smallest":
        if not encs:
            return "refuted"
        chosen = encs[0]
    else:
        raise AnalyzerError("unknown root selector {!r}".format(selector))
    if not _root_in_closed_interval(chosen, lo, hi):
        return "refuted"
    inside = poly.count_real_roots(p, lo, hi)
    if poly.sign_at_fraction(p, lo) == 0:
        inside += 1
    return "confirmed" if inside == 1 else "refuted"
