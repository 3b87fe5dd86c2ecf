"""Damped and undamped auxiliary recursions with certified closed forms.

The damped sequence (called mu here) resolves the implicit term of the
one-leg recursion; its gamma=0 specialization (tau) drives the existence
test.  Both are evaluated exactly over the rationals, or as containing
intervals at a chosen working precision.  Closed forms combine certified
root enclosures of the characteristic polynomial with an interval solve of
the starting-value system, and the tail certificate turns a dominant
positive real root into a proof of positivity beyond a computed index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import mpmath

from . import poly
from .arith import (
    ArithmeticDomainError,
    ComplexBox,
    IntervalScalar,
    Sign,
    digits_to_bits,
    precision_ladder,
)
from .methods import Method, char_poly_mu, generating_polys
from .poly import EnclosureError, RealRootEnclosure

GammaLike = Union[Fraction, int, RealRootEnclosure, IntervalScalar]


class MultipleRootError(ArithmeticDomainError):
    """Closed form unavailable: characteristic polynomial has multiple roots."""


# ---------------------------------------------------------------------------
# exact evaluation
# ---------------------------------------------------------------------------


def mu_prefix(m: Method, gamma: Fraction, n_max: int) -> List[Fraction]:
    """Exact values mu_0..mu_{n_max}; terms for n < 0 are zero."""
    gamma = Fraction(gamma)
    den = 1 + gamma * m.b0
    if den == 0:
        raise ArithmeticDomainError("1 + gamma*b0 vanishes")
    out: List[Fraction] = []
    for n in range(n_max + 1):
        acc = m.b[n] if n <= m.k else Fraction(0)
        for j in range(1, min(n, m.k) + 1):
            acc += (m.a[j - 1] - gamma * m.b[j]) * out[n - j]
        out.append(acc / den)
    return out


def eval_mu(m: Method, gamma: Fraction, n: int) -> Fraction:
    if n < 0:
        return Fraction(0)
    return mu_prefix(m, gamma, n)[n]


def tau_prefix(m: Method, n_max: int) -> List[Fraction]:
    """Exact values tau_0..tau_{n_max}."""
    out: List[Fraction] = []
    for n in range(n_max + 1):
        acc = m.b[n] if n <= m.k else Fraction(0)
        for j in range(1, min(n, m.k) + 1):
            acc += m.a[j - 1] * out[n - j]
        out.append(acc)
    return out


def eval_tau(m: Method, n: int) -> Fraction:
    if n < 0:
        return Fraction(0)
    return tau_prefix(m, n)[n]


# ---------------------------------------------------------------------------
# interval evaluation (streaming)
# ---------------------------------------------------------------------------


def _gamma_interval(gamma: GammaLike, digits: int) -> IntervalScalar:
    if isinstance(gamma, IntervalScalar):
        return gamma
    if isinstance(gamma, RealRootEnclosure):
        return gamma.interval(digits)
    return IntervalScalar.from_fraction(Fraction(gamma), digits)


def eval_mu_interval(
    m: Method, gamma: GammaLike, n_max: int, digits: int
) -> Iterator[Tuple[int, IntervalScalar]]:
    """Stream (n, enclosure of mu_n) for n = 1..n_max at fixed precision.

    Every emitted interval contains the exact value for every gamma in the
    input enclosure.  Only a sliding window of k terms is retained.
    """
    g = _gamma_interval(gamma, digits)
    one = IntervalScalar.exact_int(1, digits)
    b0 = IntervalScalar.from_fraction(m.b0, digits)
    den = one.add(g.mul(b0))
    if den.contains_zero():
        raise ArithmeticDomainError("1 + gamma*b0 may vanish on the enclosure")
    coeffs = []
    for j in range(1, m.k + 1):
        aj = IntervalScalar.from_fraction(m.a[j - 1], digits)
        bj = IntervalScalar.from_fraction(m.b[j], digits)
        coeffs.append(aj.sub(g.mul(bj)).div(den))
    inhom = [IntervalScalar.from_fraction(m.b[n], digits).div(den) for n in range(m.k + 1)]
    zero = IntervalScalar.exact_int(0, digits)
    window: List[IntervalScalar] = [inhom[0]]  # mu_0
    for n in range(1, n_max + 1):
        acc = inhom[n] if n <= m.k else zero
        for j in range(1, min(n, m.k) + 1):
            acc = acc.add(coeffs[j - 1].mul(window[-j]))
        window.append(acc)
        if len(window) > m.k:
            window.pop(0)
        yield n, acc


def sequence_csv_rows(
    m: Method,
    kind: str,
    n_max: int,
    gamma: Optional[Fraction] = None,
) -> List[str]:
    """CSV rows (n, exact value, sign) for a sequence prefix."""
    if kind == "tau":
        vals = tau_prefix(m, n_max)
    else:
        vals = mu_prefix(m, Fraction(gamma), n_max)
    rows = ["n,value,sign"]
    for n in range(1, n_max + 1):
        sign = "positive" if vals[n] > 0 else ("negative" if vals[n] < 0 else "zero")
        num, den = vals[n].numerator, vals[n].denominator
        text = str(num) if den == 1 else "{}/{}".format(num, den)
        rows.append("{},{},{}".format(n, text, sign))
    return rows


@dataclass
class IntervalRun:
    """Collected signs of an interval evaluation run."""

    n_max: int
    digits: int
    negative: List[int] = field(default_factory=list)
    unknown: List[int] = field(default_factory=list)
    first_negative: Optional[int] = None

    @property
    def all_certified(self) -> bool:
        return not self.unknown


def run_mu_signs(
    m: Method,
    gamma: GammaLike,
    n_max: int,
    digits: int,
    stop_at_negative: bool = False,
) -> IntervalRun:
    run = IntervalRun(n_max=n_max, digits=digits)
    for n, val in eval_mu_interval(m, gamma, n_max, digits):
        s = val.sign()
        if s is Sign.NEGATIVE:
            run.negative.append(n)
            if run.first_negative is None:
                run.first_negative = n
            if stop_at_negative:
                break
        elif s is Sign.UNKNOWN:
            run.unknown.append(n)
    return run


# ---------------------------------------------------------------------------
# the sequence members as exact rational functions of gamma
# ---------------------------------------------------------------------------


def mu_gamma_numerators(m: Method, n_max: int) -> List[List[Fraction]]:
    """Numerators N_n (polynomials in gamma, descending) with
    mu_n = N_n / (1 + gamma b0)^(n+1)."""
    D = [m.b0, Fraction(1)] if m.b0 != 0 else [Fraction(1)]
    dpow: List[List[Fraction]] = [[Fraction(1)]]
    for _ in range(n_max):
        dpow.append(poly.mul(dpow[-1], D))
    numerators: List[List[Fraction]] = []
    for n in range(n_max + 1):
        acc = poly.scale(dpow[n], m.b[n]) if n <= m.k and m.b[n] != 0 else []
        for j in range(1, min(n, m.k) + 1):
            term = [-m.b[j], m.a[j - 1]] if m.b[j] != 0 else [m.a[j - 1]]
            if not numerators[n - j]:
                continue
            contrib = poly.mul(term, numerators[n - j])
            contrib = poly.mul(contrib, dpow[j - 1])
            acc = poly.add(acc, contrib)
        numerators.append(acc)
    return numerators


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootRecord:
    """One root class: a real root, or an upper-half representative of a
    conjugate pair (counting twice)."""

    box: ComplexBox
    is_pair: bool
    exact: Optional[Fraction] = None

    @property
    def weight(self) -> int:
        return 2 if self.is_pair else 1

    def modulus(self) -> IntervalScalar:
        if self.exact is not None:
            digits = self.box.re.digits
            return IntervalScalar.from_fraction(abs(self.exact), digits)
        return self.box.modulus()


@dataclass
class ClosedForm:
    """Certified representation sum_j c_j rho_j^n valid for n >= window_start."""

    method: Method
    kind: str  # "mu" or "tau"
    gamma: Optional[GammaLike]
    order: int
    window_start: int
    roots: List[RootRecord]
    coeffs: List[ComplexBox]
    digits: int
    zero_roots: int = 0

    def reconstruct(self, n: int) -> IntervalScalar:
        """Interval containing the exact sequence value (n >= window_start)."""
        digits = self.digits
        acc = ComplexBox.from_fractions(0, 0, digits)
        for rec, c in zip(self.roots, self.coeffs):
            term = c.mul(rec.box.pow_int(n))
            if rec.is_pair:
                term = ComplexBox(term.re.add(term.re), term.im.sub(term.im))
            acc = acc.add(term)
        return acc.re

    def dominant_index(self) -> Optional[int]:
        """Index of the root class certified strictly dominant, if any."""
        mods = [rec.modulus() for rec in self.roots]
        if not mods:
            return None
        best = max(range(len(mods)), key=lambda i: mods[i].lo_fraction())
        blo = mods[best].lo_fraction()
        for i, mv in enumerate(mods):
            if i != best and mv.hi_fraction() >= blo:
                return None
        return best


def _n_inhomogeneous(m: Method) -> int:
    """Largest n in 1..k with b_n != 0 (0 if the recursion is homogeneous
    from the first step on)."""
    for n in range(m.k, 0, -1):
        if m.b[n] != 0:
            return n
    return 0


def _char_coeffs(m: Method, kind: str, gamma: Optional[Fraction]) -> List[Fraction]:
    if kind == "tau":
        return list(generating_polys(m).rho)
    return char_poly_mu(m, Fraction(gamma))


def _exact_values(m: Method, kind: str, gamma: Optional[Fraction], upto: int) -> List[Fraction]:
    if kind == "tau":
        return tau_prefix(m, upto)
    return mu_prefix(m, Fraction(gamma), upto)


def _interval_values(
    m: Method, kind: str, gamma: GammaLike, upto: int, digits: int
) -> List[IntervalScalar]:
    if kind == "tau":
        return [IntervalScalar.from_fraction(v, digits) for v in tau_prefix(m, upto)]
    vals = [None] * (upto + 1)
    g = _gamma_interval(gamma, digits)
    one = IntervalScalar.exact_int(1, digits)
    den = one.add(g.mul(IntervalScalar.from_fraction(m.b0, digits)))
    vals[0] = IntervalScalar.from_fraction(m.b[0], digits).div(den)
    for n, v in eval_mu_interval(m, gamma, upto, digits):
        vals[n] = v
    return vals  # type: ignore[return-value]


def _real_newton_refine(
    coeffs: Sequence[IntervalScalar],
    interval: IntervalScalar,
    width: Fraction,
    digits: int,
    max_iter: int = 80,
) -> IntervalScalar:
    dcoeffs = _interval_derivative(coeffs)
    cur = interval
    for _ in range(max_iter):
        if cur.width_fraction() <= width:
            return cur
        mid = IntervalScalar.from_fraction(cur.mid_fraction(), digits)
        try:
            fmid = _interval_horner(coeffs, mid)
            dcur = _interval_horner(dcoeffs, cur)
            nxt = mid.sub(fmid.div(dcur)).intersect(cur)
        except ArithmeticDomainError:
            break
        if nxt.width_fraction() >= cur.width_fraction():
            break
        cur = nxt
    if cur.width_fraction() <= width:
        return cur
    raise EnclosureError("real Newton refinement stalled")


def _interval_horner(coeffs: Sequence[IntervalScalar], x: IntervalScalar) -> IntervalScalar:
    acc = IntervalScalar.exact_int(0, x.digits)
    for c in coeffs:
        acc = acc.mul(x).add(c)
    return acc


def _interval_derivative(coeffs: Sequence[IntervalScalar]) -> List[IntervalScalar]:
    n = len(coeffs) - 1
    out = []
    for i in range(n):
        k = n - i
        out.append(coeffs[i].mul(IntervalScalar.exact_int(k, coeffs[i].digits)))
    return out


def _real_newton_certify(
    coeffs: Sequence[IntervalScalar],
    x: Fraction,
    radius: Fraction,
    digits: int,
) -> Optional[IntervalScalar]:
    Z = IntervalScalar.from_fractions(x - radius, x + radius, digits)
    mid = IntervalScalar.from_fraction(x, digits)
    dcoeffs = _interval_derivative(coeffs)
    try:
        fmid = _interval_horner(coeffs, mid)
        dZ = _interval_horner(dcoeffs, Z)
        N = mid.sub(fmid.div(dZ))
    except ArithmeticDomainError:
        return None
    if N.strictly_inside(Z):
        return N
    return None


def _enclose_roots_interval_poly(
    coeffs: Sequence[IntervalScalar], digits: int, width: Fraction
) -> Optional[List[RootRecord]]:
    """Certified root classes of a real polynomial with interval coefficients.

    Returns None when certification fails at this precision (caller
    escalates).  Completeness holds because the boxes are pairwise disjoint,
    each certified to hold exactly one root, and their count is the degree.
    """
    n = len(coeffs) - 1
    mid_poly = [c.mid_fraction() for c in coeffs]
    approx = poly._approx_roots(mid_poly, digits + 10)
    if len(approx) != n:
        return None
    cboxes = [ComplexBox(c, IntervalScalar.exact_int(0, digits)) for c in coeffs]
    dboxes = _complex_derivative(cboxes, digits)
    records: List[RootRecord] = []
    # split candidates into real seeds and upper-half pair seeds; midpoint
    # rounding can push real roots slightly off the axis, so classify by
    # conjugate pairing: roots with positive imaginary part whose mirror is
    # also present form the pairs
    pos = [z for z in approx if mpmath.im(z) > 0]
    neg = [z for z in approx if mpmath.im(z) < 0]
    n_pairs = min(len(pos), len(neg))
    cand = sorted(approx, key=lambda z: abs(mpmath.im(z)))
    n_real = n - 2 * n_pairs
    reals = [poly._mpf_fraction(mpmath.re(z)) for z in cand[:n_real]]
    rest = cand[n_real:]
    pair_seeds = [
        (poly._mpf_fraction(mpmath.re(z)), poly._mpf_fraction(mpmath.im(z)))
        for z in rest
        if mpmath.im(z) > 0
    ]
    if 2 * len(pair_seeds) != len(rest):
        return None
    boxes: List[ComplexBox] = []
    for x in reals:
        radius = Fraction(1, 2) ** max(8, digits_to_bits(digits) // 3)
        enc = None
        while radius <= Fraction(1, 2):
            enc = _real_newton_certify(coeffs, x, radius, digits)
            if enc is not None:
                break
            radius *= 4
        if enc is None:
            return None
        try:
            enc = _real_newton_refine(coeffs, enc, width, digits)
        except EnclosureError:
            return None
        records.append(RootRecord(ComplexBox(enc, IntervalScalar.exact_int(0, digits)), False))
        boxes.append(records[-1].box)
    for zr, zi in pair_seeds:
        radius = Fraction(1, 2) ** max(8, digits_to_bits(digits) // 3)
        box = None
        while radius <= Fraction(1, 2):
            box = poly.newton_certify(cboxes, dboxes, zr, zi, radius, digits)
            if box is not None:
                break
            radius *= 4
        if box is None:
            return None
        try:
            box = poly.newton_refine(cboxes, dboxes, box, width, digits)
        except EnclosureError:
            return None
        if box.im.lo_fraction() <= 0:
            return None
        records.append(RootRecord(box, True))
        boxes.append(box)
        boxes.append(box.conjugate())
    if not poly._pairwise_disjoint(boxes):
        return None
    return records


def _complex_derivative(cboxes: Sequence[ComplexBox], digits: int) -> List[ComplexBox]:
    n = len(cboxes) - 1
    out = []
    for i in range(n):
        k = n - i
        scalar = IntervalScalar.exact_int(k, digits)
        out.append(cboxes[i].mul_real(scalar))
    return out


def closed_form(
    m: Method,
    gamma: Optional[GammaLike],
    kind: str = "mu",
    digits: int = 64,
    digits_cap: int = 20000,
) -> ClosedForm:
    """Certified closed form of the sequence (simple characteristic roots).

    Raises MultipleRootError at parameter values where the characteristic
    polynomial has a multiple root; raises EnclosureError if certification
    fails below the precision cap.
    """
    if kind not in ("mu", "tau"):
        raise ValueError("kind must be 'mu' or 'tau'")
    exact_gamma = isinstance(gamma, (Fraction, int)) or kind == "tau"
    for dig in precision_ladder(digits, digits_cap):
        try:
            return _closed_form_at(m, gamma, kind, dig, exact_gamma)
        except MultipleRootError:
            raise
        except (EnclosureError, ArithmeticDomainError):
            continue
    raise EnclosureError("closed form not certifiable below the precision cap")


def _closed_form_at(
    m: Method, gamma: Optional[GammaLike], kind: str, digits: int, exact_gamma: bool
) -> ClosedForm:
    n_b = _n_inhomogeneous(m)
    if exact_gamma:
        char = _char_coeffs(m, kind, Fraction(gamma) if kind == "mu" else None)
        zero_roots = 0
        while len(char) > 1 and char[-1] == 0:
            char.pop()
            zero_roots += 1
        order = len(char) - 1
        if order > 0 and poly.discriminant(char) == 0:
            raise MultipleRootError(
                "closed form unavailable: multiple characteristic roots; "
                "use direct evaluation"
            )
        width = Fraction(1, 10) ** max(8, digits // 2)
        records: List[RootRecord] = []
        if order > 0:
            if kind == "tau":
                # rho(1) = 0 exactly by consistency; deflate and keep 1 exactly
                charf = [Fraction(c) for c in char]
                if poly.eval_at(charf, Fraction(1)) == 0:
                    rest = poly.divexact(charf, [Fraction(1), Fraction(-1)])
                    one_box = ComplexBox.from_fractions(1, 0, digits)
                    records.append(RootRecord(one_box, False, exact=Fraction(1)))
                    encs = (
                        poly.enclose_all_roots(rest, width, digits, digits)
                        if poly.degree(rest) >= 1
                        else []
                    )
                else:
                    encs = poly.enclose_all_roots(charf, width, digits, digits)
            else:
                encs = poly.enclose_all_roots(char, width, digits, digits)
            for e in encs:
                if e.multiplicity != 1:
                    raise MultipleRootError("multiple characteristic roots")
                if e.is_real():
                    records.append(RootRecord(e.box, False))
                elif e.box.im.lo_fraction() > 0:
                    records.append(RootRecord(e.box, True))
    else:
        # algebraic gamma: interval coefficients from the refined enclosure
        if not isinstance(gamma, RealRootEnclosure):
            raise ValueError("algebraic gamma must be a RealRootEnclosure")
        genc = gamma.refined(Fraction(1, 10) ** (digits + 10))
        g = genc.interval(digits)
        one = IntervalScalar.exact_int(1, digits)
        lead = one.add(g.mul(IntervalScalar.from_fraction(m.b0, digits)))
        coeffs = [lead]
        for j in range(1, m.k + 1):
            aj = IntervalScalar.from_fraction(m.a[j - 1], digits)
            bj = IntervalScalar.from_fraction(m.b[j], digits)
            coeffs.append(g.mul(bj).sub(aj))
        zero_roots = 0
        order = len(coeffs) - 1
        # multiple-root guard: the discriminant as a function of gamma must
        # exclude zero on the enclosure
        disc_poly = char_discriminant_gamma_poly(m)
        dval = _interval_horner(
            [IntervalScalar.from_fraction(c, digits) for c in disc_poly], g
        )
        if dval.contains_zero():
            raise MultipleRootError(
                "characteristic discriminant not certified nonzero at this gamma"
            )
        width = Fraction(1, 10) ** max(8, digits // 2)
        recs = _enclose_roots_interval_poly(coeffs, digits, width)
        if recs is None:
            raise EnclosureError("root certification failed for interval coefficients")
        records = recs
        gamma = genc
    order_total = order
    if sum(r.weight for r in records) != order_total:
        raise EnclosureError("root class weights do not sum to the order")
    s = max(0, n_b + 1 - order_total) if order_total > 0 else n_b + 1
    if order_total == 0:
        return ClosedForm(
            method=m,
            kind=kind,
            gamma=gamma,
            order=0,
            window_start=s,
            roots=[],
            coeffs=[],
            digits=digits,
            zero_roots=zero_roots,
        )
    # starting-value solve: sum_j c_j rho_j^n = value_n, n = s..s+order-1
    upto_check = s + 2 * m.k
    if exact_gamma:
        vals = _exact_values(m, kind, Fraction(gamma) if kind == "mu" else None, upto_check)
        rhs = [ComplexBox.from_fractions(v, 0, digits) for v in vals[s : s + order_total]]
    else:
        ivals = _interval_values(m, kind, gamma, upto_check, digits)
        rhs = [ComplexBox(v, IntervalScalar.exact_int(0, digits)) for v in ivals[s : s + order_total]]
    cols: List[ComplexBox] = []
    for rec in records:
        cols.append(rec.box)
        if rec.is_pair:
            cols.append(rec.box.conjugate())
    matrix = [[c.pow_int(s + r) for c in cols] for r in range(order_total)]
    sol = _solve_complex_system(matrix, rhs, digits)
    coeff_records: List[ComplexBox] = []
    idx = 0
    for rec in records:
        coeff_records.append(sol[idx])
        idx += 2 if rec.is_pair else 1
    cf = ClosedForm(
        method=m,
        kind=kind,
        gamma=gamma,
        order=order_total,
        window_start=s,
        roots=records,
        coeffs=coeff_records,
        digits=digits,
        zero_roots=zero_roots,
    )
    # containment validation of the reconstruction over the checking window
    for n in range(s, upto_check + 1):
        rec_val = cf.reconstruct(n)
        if exact_gamma:
            if not rec_val.contains_fraction(vals[n]):
                raise EnclosureError(
                    "reconstruction does not contain the exact value at n={}".format(n)
                )
        else:
            if not rec_val.intersects(ivals[n]):
                raise EnclosureError(
                    "reconstruction inconsistent with direct evaluation at n={}".format(n)
                )
    return cf


def _lagrange_interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> List[Fraction]:
    acc: List[Fraction] = []
    for i, xi in enumerate(xs):
        num = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = poly.mul(num, [Fraction(1), -xj])
            den *= xi - xj
        acc = poly.add(acc, poly.scale(num, ys[i] / den))
    return acc


_DISC_CACHE: dict = {}


def char_discriminant_gamma_poly(m: Method) -> List[Fraction]:
    """Discriminant of the characteristic polynomial as an exact polynomial
    in gamma (computed by interpolation, verified at an extra point)."""
    key = (m.k, m.a, m.b)
    if key in _DISC_CACHE:
        return _DISC_CACHE[key]
    npts = 2 * m.k + 2
    xs = [Fraction(i) for i in range(npts)]
    ys = [poly.discriminant(char_poly_mu(m, x)) for x in xs]
    coeffs = _lagrange_interpolate(xs, ys)
    check = Fraction(npts)
    if poly.eval_at(coeffs, check) != poly.discriminant(char_poly_mu(m, check)):
        raise ArithmeticDomainError("discriminant interpolation failed verification")
    _DISC_CACHE[key] = coeffs
    return coeffs


# ---------------------------------------------------------------------------
# tail certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TailTerm:
    weight: int  # 1 for a real root, 2 for a conjugate pair
    coeff_mag_ub: Fraction
    root_mag_ub: Fraction
    ratio_ub: Fraction


@dataclass(frozen=True)
class TailCertificate:
    """Proof data: the sequence is strictly positive for all n >= n_start.

    For n >= n_start the residual sum_j weight_j * coeff_mag_ub_j *
    ratio_ub_j^n stays below dominant_coeff_lb (all ratio bounds are < 1, so
    the residual is decreasing), hence
    value_n >= dominant_root_lb^n * (dominant_coeff_lb - residual) > 0.
    """

    n_start: int
    window_start: int
    dominant_root_lb: Fraction
    dominant_root_ub: Fraction
    dominant_coeff_lb: Fraction
    terms: Tuple[TailTerm, ...]
    residual_at_start: Fraction

    def residual(self, n: int) -> Fraction:
        return sum(
            (t.weight * t.coeff_mag_ub * t.ratio_ub ** n for t in self.terms),
            Fraction(0),
        )


def _ceil_decimal(x: Fraction, places: int) -> Fraction:
    scale = 10**places
    return Fraction(-((-x * scale) // 1), scale)


def _floor_decimal(x: Fraction, places: int) -> Fraction:
    scale = 10**places
    return Fraction((x * scale) // 1, scale)


def tail_certificate(cf: ClosedForm, n_search_cap: int = 1 << 14) -> Optional[TailCertificate]:
    """Positivity-from-N certificate for a closed form with a strictly
    dominant positive real simple root and positive leading coefficient.

    Certificate constants are rounded outward to compact decimal fractions
    so the stored data stays small and independently checkable.  Returns
    None when the dominance structure cannot be certified from the closed
    form's enclosures (the caller escalates precision or concludes through
    another mechanism).
    """
    if cf.order == 0:
        # the sequence is identically zero beyond the window; not a
        # positivity certificate
        return None
    di = cf.dominant_index()
    if di is None:
        return None
    dom = cf.roots[di]
    if dom.is_pair:
        return None
    rho_lb_raw = dom.box.re.lo_fraction()
    rho_ub_raw = dom.box.re.hi_fraction()
    if dom.exact is not None:
        rho_lb_raw = rho_ub_raw = dom.exact
    if rho_lb_raw <= 0:
        return None
    c_lb_raw = cf.coeffs[di].re.lo_fraction()
    if c_lb_raw <= 0:
        return None
    places = 25
    while True:
        rho_lb = _floor_decimal(rho_lb_raw, places)
        rho_ub = _ceil_decimal(rho_ub_raw, places)
        c_lb = _floor_decimal(c_lb_raw, places)
        terms: List[TailTerm] = []
        ok = rho_lb > 0 and c_lb > 0
        if ok:
            for i, (rec, c) in enumerate(zip(cf.roots, cf.coeffs)):
                if i == di:
                    continue
                r_ub = _ceil_decimal(rec.modulus().hi_fraction(), places)
                ratio = _ceil_decimal(r_ub / rho_lb, places)
                if ratio >= 1:
                    ok = False
                    break
                m_ub = _ceil_decimal(c.modulus().hi_fraction(), places)
                terms.append(TailTerm(rec.weight, m_ub, r_ub, ratio))
        if ok:
            break
        if places >= 4 * max(cf.digits, 25):
            return None  # margins too thin even at full stored precision
        places *= 2

    def residual(n: int) -> Fraction:
        return sum((t.weight * t.coeff_mag_ub * t.ratio_ub ** n for t in terms), Fraction(0))

    start = max(1, cf.window_start)
    if residual(start) < c_lb:
        n0 = start
    else:
        lo = start
        width = 1
        while True:
            hi = start + width
            if hi > n_search_cap:
                return None
            if residual(hi) < c_lb:
                break
            lo = hi
            width *= 2
        while hi - lo > 1:  # smallest n with residual(n) < c_lb
            mid = (lo + hi) // 2
            if residual(mid) < c_lb:
                hi = mid
            else:
                lo = mid
        n0 = hi
    # store a compact outward bound on the residual, still below the
    # dominant coefficient (advance n0 if the rounding ate the margin)
    res_bound = _ceil_decimal(residual(n0), places)
    while res_bound >= c_lb:
        n0 += 1
        if n0 > n_search_cap:
            return None
        res_bound = _ceil_decimal(residual(n0), places)
    return TailCertificate(
        n_start=n0,
        window_start=cf.window_start,
        dominant_root_lb=rho_lb,
        dominant_root_ub=rho_ub,
        dominant_coeff_lb=c_lb,
        terms=tuple(terms),
        residual_at_start=res_bound,
    )


# ---------------------------------------------------------------------------
# exact closed form when every characteristic root is rational
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalExponentialForm:
    """Exact representation value_n = sum_i P_i(n) * rho_i^n for n >= window_start,
    with rational roots rho_i of multiplicities m_i and exact polynomial
    coefficients P_i (ascending in n-powers)."""

    window_start: int
    parts: Tuple[Tuple[Fraction, Tuple[Fraction, ...]], ...]

    def value(self, n: int) -> Fraction:
        acc = Fraction(0)
        for rho, coeffs in self.parts:
            pv = sum((c * n ** t for t, c in enumerate(coeffs)), Fraction(0))
            acc += pv * rho ** n
        return acc

    def all_terms_nonnegative(self) -> bool:
        """Sufficient positivity test: every root nonnegative and every
        coefficient polynomial has nonnegative coefficients."""
        for rho, coeffs in self.parts:
            if rho < 0:
                return False
            if any(c < 0 for c in coeffs):
                return False
        return True


def _rational_roots(char: Sequence[Fraction]) -> Optional[List[Tuple[Fraction, int]]]:
    """All roots with multiplicities, provided every root is rational."""
    ip = poly.to_integer(char)
    roots: List[Tuple[Fraction, int]] = []
    work = [Fraction(c) for c in ip]
    nz = 0
    while poly.degree(work) >= 1 and work[-1] == 0:
        work = work[:-1]
        nz += 1
    if nz:
        roots.append((Fraction(0), nz))
    while poly.degree(work) >= 1:
        iw = poly.to_integer(work)
        lead, trail = iw[0], iw[-1]
        if abs(lead) > 10**12 or abs(trail) > 10**12:
            return None  # divisor enumeration would be impractical
        found = None
        for p in _divisors(abs(trail)):
            for q in _divisors(abs(lead)):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if poly.eval_at(work, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        mult = 0
        while poly.eval_at(work, found) == 0:
            work = poly.divexact(work, [Fraction(1), -found])
            mult += 1
            if poly.degree(work) < 1:
                break
        roots.append((found, mult))
    return roots


def _divisors(n: int) -> List[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_closed_form(
    m: Method, gamma: Fraction, kind: str = "mu"
) -> Optional[RationalExponentialForm]:
    """Exact exponential-polynomial form at parameter values where all
    characteristic roots are rational (covers multiple-root cases)."""
    char = _char_coeffs(m, kind, Fraction(gamma) if kind == "mu" else None)
    char = [Fraction(c) for c in char]
    zero_mult = 0
    while poly.degree(char) >= 1 and char[-1] == 0:
        char.pop()
        zero_mult += 1
    order = poly.degree(char)
    roots = _rational_roots(char) if order >= 1 else []
    if roots is None:
        return None
    n_b = _n_inhomogeneous(m)
    # trailing zero coefficients reduce the recursion order outright
    s = max(0, n_b + 1 - order) if order >= 1 else n_b + 1
    unknowns = sum(mult for _r, mult in roots)
    if unknowns == 0:
        vals = _exact_values(m, kind, gamma if kind == "mu" else None, s + 2 * m.k)
        if any(v != 0 for v in vals[s:]):
            return None
        return RationalExponentialForm(window_start=s, parts=())
    upto = s + unknowns - 1 + 2 * m.k
    vals = _exact_values(m, kind, gamma if kind == "mu" else None, upto)
    # solve for the coefficient polynomials from the first `unknowns` values
    cols = []
    for rho, mult in roots:
        for t in range(mult):
            cols.append((rho, t))
    A = []
    rhs = []
    for r in range(unknowns):
        n = s + r
        row = []
        for rho, t in cols:
            row.append(Fraction(n) ** t * rho ** n)
        A.append(row)
        rhs.append(vals[n])
    sol = _solve_fraction_system(A, rhs)
    if sol is None:
        return None
    parts = []
    idx = 0
    for rho, mult in roots:
        coeffs = tuple(sol[idx : idx + mult])
        idx += mult
        parts.append((rho, coeffs))
    form = RationalExponentialForm(window_start=s, parts=tuple(parts))
    for n in range(s, upto + 1):
        if form.value(n) != vals[n]:
            return None
    return form


def _solve_fraction_system(A: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    n = len(rhs)
    M = [row[:] + [rhs[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(col + 1, n):
            if M[r][col] == 0:
                continue
            f = M[r][col] / M[col][col]
            for c in range(col, n + 1):
                M[r][c] -= f * M[col][c]
    out = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = M[r][n]
        for c in range(r + 1, n):
            acc -= M[r][c] * out[c]
        out[r] = acc / M[r][r]
    return out


def _solve_complex_system(
    matrix: List[List[ComplexBox]], rhs: List[ComplexBox], digits: int
) -> List[ComplexBox]:
    """Gaussian elimination with complex interval boxes."""
    n = len(rhs)
    A = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = None
        best = Fraction(-1)
        for r in range(col, n):
            mg = A[r][col].abs_sq().lo_fraction()
            if mg > best:
                best = mg
                pivot = r
        if pivot is None or best <= 0:
            raise EnclosureError("singular starting-value system at this precision")
        A[col], A[pivot] = A[pivot], A[col]
        for r in range(col + 1, n):
            if A[r][col].contains_zero() and A[r][col].abs_sq().hi_fraction() == 0:
                continue
            f = A[r][col].div(A[col][col])
            for c in range(col, n + 1):
                A[r][c] = A[r][c].sub(f.mul(A[col][c]))
    out: List[Optional[ComplexBox]] = [None] * n
    for r in range(n - 1, -1, -1):
        acc = A[r][n]
        for c in range(r + 1, n):
            acc = acc.sub(A[r][c].mul(out[c]))
        out[r] = acc.div(A[r][r])
    return out  # type: ignore[return-value]
