"""Exact polynomial algebra with certified root analysis.

Coefficient lists are kept in descending degree order throughout, matching
the serialization format used by the CLI.  Real roots are isolated with
signed subresultant (Sturm) chains over the integers and refined by exact
rational bisection; complex roots are enclosed by floating approximations
that are then rigorously certified and refined with the interval Newton
operator.  Membership of roots on the unit circle is decided exactly via
the gcd with the reversed polynomial and a z + 1/z degree reduction, never
numerically.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath

from .arith import (
    ArithmeticDomainError,
    ComplexBox,
    IntervalScalar,
    digits_to_bits,
    precision_ladder,
)

# ---------------------------------------------------------------------------
# dense coefficient-list helpers (descending order)
# ---------------------------------------------------------------------------


def strip(c: Sequence) -> list:
    i = 0
    while i < len(c) and c[i] == 0:
        i += 1
    return list(c[i:])


def degree(c: Sequence) -> int:
    return len(c) - 1


def is_zero(c: Sequence) -> bool:
    return len(c) == 0


def add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    off = len(a) - len(b)
    for i, x in enumerate(b):
        out[off + i] += x
    return strip(out)


def neg(a: Sequence) -> list:
    return [-x for x in a]


def sub(a: Sequence, b: Sequence) -> list:
    return add(a, neg(b))


def mul(a: Sequence, b: Sequence) -> list:
    if is_zero(a) or is_zero(b):
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return strip(out)


def scale(a: Sequence, s) -> list:
    if s == 0:
        return []
    return [x * s for x in a]


def derivative(a: Sequence) -> list:
    n = degree(a)
    if n <= 0:
        return []
    return strip([a[i] * (n - i) for i in range(n)])


def eval_at(a: Sequence, x):
    acc = x * 0
    for c in a:
        acc = acc * x + c
    return acc


def eval_fraction(a: Sequence[int], q: Fraction) -> Fraction:
    """Exact value of an integer polynomial at p/s via homogenization."""
    a = strip(a)
    if is_zero(a):
        return Fraction(0)
    p, s = q.numerator, q.denominator
    acc = 0
    spow = 1
    for c in a:
        acc = acc * p + c * spow
        spow *= s
    return Fraction(acc, s ** degree(a))


def sign_of(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def sign_at_fraction(a: Sequence[int], q: Fraction) -> int:
    """Exact sign of an integer polynomial at a rational point."""
    a = strip(a)
    if is_zero(a):
        return 0
    p, s = q.numerator, q.denominator
    acc = 0
    spow = 1
    for c in a:
        acc = acc * p + c * spow
        spow *= s
    return sign_of(acc)


def divmod_exact(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[list, list]:
    """Rational polynomial division: a = q*b + r with deg r < deg b."""
    a = strip([Fraction(x) for x in a])
    b = strip([Fraction(x) for x in b])
    if is_zero(b):
        raise ZeroDivisionError("polynomial division by zero")
    db, lb = degree(b), b[0]
    if is_zero(a) or degree(a) < db:
        return [], a
    q = [Fraction(0)] * (degree(a) - db + 1)
    r = list(a)
    while not is_zero(r) and degree(r) >= db:
        shift = degree(r) - db
        f = r[0] / lb
        q[len(q) - 1 - shift] = f
        for i in range(db + 1):
            r[i] -= f * b[i]
        r = strip(r)
    return strip(q), r


def divexact(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    q, r = divmod_exact(a, b)
    if not is_zero(r):
        raise ValueError("polynomial division was not exact")
    return q


def content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, abs(int(c)))
        if g == 1:
            break
    return g


def primitive(a: Sequence[int]) -> list:
    """Primitive part with positive leading coefficient."""
    a = strip(a)
    if is_zero(a):
        return []
    g = content(a)
    a = [int(c) // g for c in a]
    if a[0] < 0:
        a = neg(a)
    return a


def to_integer(a: Sequence[Fraction]) -> list:
    """Clear denominators: primitive integer polynomial with the same roots."""
    a = strip([Fraction(x) for x in a])
    if is_zero(a):
        return []
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    return primitive([int(c * den) for c in a])


def to_integer_signed(a: Sequence[Fraction]) -> list:
    """Clear denominators by a positive constant: same roots, same signs."""
    a = strip([Fraction(x) for x in a])
    if is_zero(a):
        return []
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    out = [int(c * den) for c in a]
    g = content(out)
    return [c // g for c in out]


def reverse(a: Sequence) -> list:
    """Reversed (reciprocal) polynomial z^n * a(1/z)."""
    return strip(list(reversed(list(a))))


# ---------------------------------------------------------------------------
# signed remainder chains and Sturm counting
# ---------------------------------------------------------------------------


def _pseudo_rem_pos(a: Sequence[int], b: Sequence[int]) -> list:
    """Integer remainder of a by b scaled by a positive constant.

    Each elimination step multiplies by |lc(b)|, so the result is a positive
    multiple of the rational remainder; sign-based algorithms stay valid.
    """
    r = strip(list(a))
    b = strip(list(b))
    db = degree(b)
    lb = b[0]
    albl = abs(lb)
    s = 1 if lb > 0 else -1
    while not is_zero(r) and degree(r) >= db:
        r0 = r[0]
        rr = [c * albl for c in r]
        for i in range(db + 1):
            rr[i] -= s * r0 * b[i]
        r = strip(rr[1:])
    return r


def pseudo_sturm_chain(p: Sequence[int], q: Sequence[int]) -> List[list]:
    """Signed primitive remainder chain from (p, q).

    Each element is a positive multiple of the corresponding rational Sturm
    chain term, so sign-variation counts agree with the exact Sturm counts.
    """
    chain = [strip(list(p)), strip(list(q))]
    if is_zero(chain[1]):
        chain.pop()
        return chain
    while degree(chain[-1]) > 0:
        r = _pseudo_rem_pos(chain[-2], chain[-1])
        if is_zero(r):
            break
        chain.append(primitive_signed(neg(r)))
    return chain


def primitive_signed(a: Sequence[int]) -> list:
    """Divide by the content but keep the sign (unlike ``primitive``)."""
    a = strip(a)
    if is_zero(a):
        return []
    g = content(a)
    return [int(c) // g for c in a]


def sturm_chain(p: Sequence[int]) -> List[list]:
    """Generalized Sturm chain (counts distinct real roots even if p
    is not squarefree)."""
    p = primitive(p)
    if is_zero(p):
        return []
    if degree(p) < 1:
        return [p]
    return pseudo_sturm_chain(p, derivative(p))


def _variations(signs: Iterable[int]) -> int:
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev != 0 and s != prev:
            v += 1
        prev = s
    return v


def sturm_variations_at(chain: Sequence[Sequence[int]], x: Fraction) -> int:
    return _variations(sign_at_fraction(p, x) for p in chain)


def sturm_variations_inf(chain: Sequence[Sequence[int]], positive: bool) -> int:
    signs = []
    for p in chain:
        if is_zero(p):
            continue
        s = sign_of(p[0])
        if not positive and degree(p) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_real_roots(
    p: Sequence[int],
    lo: Optional[Fraction] = None,
    hi: Optional[Fraction] = None,
    chain: Optional[Sequence[Sequence[int]]] = None,
) -> int:
    """Number of distinct real roots in (lo, hi]; None endpoints mean +-inf."""
    if chain is None:
        chain = sturm_chain(p)
    va = sturm_variations_inf(chain, False) if lo is None else sturm_variations_at(chain, lo)
    vb = sturm_variations_inf(chain, True) if hi is None else sturm_variations_at(chain, hi)
    return va - vb


def cauchy_bound(p: Sequence[int]) -> Fraction:
    """Power-of-two B with all real roots inside (-B, B)."""
    p = strip(p)
    lead = abs(p[0])
    m = max((abs(c) for c in p[1:]), default=0)
    b = Fraction(m, lead) + 1
    B = Fraction(1)
    while B <= b:
        B *= 2
    return B


# ---------------------------------------------------------------------------
# gcd / squarefree machinery over the integers
# ---------------------------------------------------------------------------


def gcd_int_poly(a: Sequence[int], b: Sequence[int]) -> list:
    """Primitive gcd of two integer polynomials (primitive PRS)."""
    a, b = primitive(a), primitive(b)
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    if degree(a) < degree(b):
        a, b = b, a
    while True:
        if is_zero(b):
            return primitive(a)
        if degree(b) == 0:
            return [1]
        r = _pseudo_rem_pos(a, b)
        if is_zero(r):
            return primitive(b)
        a, b = b, primitive(r)


def gcd_frac(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    """Monic gcd over the rationals."""
    ia, ib = to_integer(a), to_integer(b)
    if is_zero(ia):
        g = ib
    elif is_zero(ib):
        g = ia
    else:
        g = gcd_int_poly(ia, ib)
    if is_zero(g):
        return []
    lead = Fraction(g[0])
    return [Fraction(c) / lead for c in g]


def yun_squarefree(p: Sequence[int]) -> List[Tuple[list, int]]:
    """Yun decomposition: p ~ prod q_i^i, q_i squarefree and pairwise coprime.

    Returns [(q_i, i)] for non-constant q_i, with q_i primitive integer
    polynomials (positive leading coefficient).
    """
    p = primitive(p)
    if degree(p) < 1:
        return []
    pf = [Fraction(c) for c in p]
    dpf = derivative(pf)
    g = gcd_frac(pf, dpf)
    if degree(g) == 0:
        return [(p, 1)]
    out: List[Tuple[list, int]] = []
    c = divexact(pf, g)
    d = sub(divexact(dpf, g), derivative(c))
    i = 1
    while True:
        a = gcd_frac(c, d)
        if degree(a) > 0:
            out.append((to_integer(a), i))
        c = divexact(c, a)
        if degree(c) == 0:
            break
        d = sub(divexact(d, a), derivative(c))
        i += 1
    return out


def squarefree_part(p: Sequence[int]) -> list:
    p = primitive(p)
    if degree(p) < 1:
        return p
    g = gcd_int_poly(p, derivative(p))
    if degree(g) == 0:
        return p
    return to_integer(divexact([Fraction(c) for c in p], [Fraction(c) for c in g]))


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------


def _bareiss_det(M: List[List[int]]) -> int:
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def resultant(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Resultant via fraction-free elimination on the Sylvester matrix."""
    a = strip([Fraction(x) for x in a])
    b = strip([Fraction(x) for x in b])
    if is_zero(a) or is_zero(b):
        return Fraction(0)
    m, n = degree(a), degree(b)
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    da = 1
    for c in a:
        da = da * c.denominator // gcd(da, c.denominator)
    db = 1
    for c in b:
        db = db * c.denominator // gcd(db, c.denominator)
    ia = [int(c * da) for c in a]
    ib = [int(c * db) for c in b]
    size = m + n
    M = [[0] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(ia):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(ib):
            M[n + i][i + j] = c
    det = _bareiss_det(M)
    return Fraction(det) / (Fraction(da) ** n * Fraction(db) ** m)


def discriminant(p: Sequence[Fraction]) -> Fraction:
    """Exact discriminant; zero iff p has a multiple root."""
    p = strip([Fraction(x) for x in p])
    n = degree(p)
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1)
    r = resultant(p, derivative(p))
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * r / p[0]


# ---------------------------------------------------------------------------
# real root isolation and refinement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealRootEnclosure:
    """Open interval (lo, hi) isolating one distinct real root of poly.

    ``poly`` is the squarefree primitive integer polynomial the endpoints
    are tested against; endpoints are never roots.  ``multiplicity`` is the
    root's multiplicity in the original input polynomial.
    """

    poly: Tuple[int, ...]
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q) -> bool:
        return self.lo < Fraction(q) < self.hi

    def refined(self, width: Fraction) -> "RealRootEnclosure":
        return refine(self, width)

    def interval(self, digits: int) -> IntervalScalar:
        return IntervalScalar.from_fractions(self.lo, self.hi, digits)

    def as_box(self, digits: int) -> ComplexBox:
        return ComplexBox(
            IntervalScalar.from_fractions(self.lo, self.hi, digits),
            IntervalScalar.exact_int(0, digits),
        )


def refine(enc: RealRootEnclosure, width: Fraction) -> RealRootEnclosure:
    """Shrink an isolating interval below ``width`` by exact sign bisection."""
    if width <= 0:
        raise ValueError("width must be positive")
    poly = list(enc.poly)
    lo, hi = enc.lo, enc.hi
    slo = sign_at_fraction(poly, lo)
    shi = sign_at_fraction(poly, hi)
    if slo == 0 or shi == 0:
        raise ValueError("enclosure endpoints must not be roots")
    if slo == shi:
        raise ValueError("invalid enclosure: equal endpoint signs")
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = sign_at_fraction(poly, mid)
        if sm == 0:
            # exact rational root: shrink symmetrically around it
            eps = min(width / 4, (hi - lo) / 8)
            while sign_at_fraction(poly, mid - eps) == 0 or sign_at_fraction(poly, mid + eps) == 0:
                eps /= 2
            return RealRootEnclosure(enc.poly, mid - eps, mid + eps, enc.multiplicity)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return RealRootEnclosure(enc.poly, lo, hi, enc.multiplicity)


def refine_away_from_zero(enc: RealRootEnclosure) -> RealRootEnclosure:
    """Refine until the interval is strictly on one side of zero.

    Requires that zero is not a root of the enclosure's polynomial.
    """
    if sign_at_fraction(list(enc.poly), Fraction(0)) == 0:
        raise ValueError("zero is a root of the enclosure polynomial")
    cur = enc
    while cur.lo <= 0 <= cur.hi:
        cur = refine(cur, cur.width() / 4)
    return cur


def _isolate_squarefree(q: Sequence[int]) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint open isolating intervals for all real roots of squarefree q."""
    q = primitive(q)
    if degree(q) < 1:
        return []
    chain = pseudo_sturm_chain(q, derivative(q))
    B = cauchy_bound(q)
    out: List[Tuple[Fraction, Fraction]] = []

    def n_roots(a: Fraction, b: Fraction) -> int:
        return sturm_variations_at(chain, a) - sturm_variations_at(chain, b)

    def split(a: Fraction, b: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append((a, b))
            return
        mid = (a + b) / 2
        if sign_at_fraction(q, mid) == 0:
            eps = (b - a) / 8
            while (
                n_roots(mid - eps, mid + eps) != 1
                or sign_at_fraction(q, mid - eps) == 0
                or sign_at_fraction(q, mid + eps) == 0
            ):
                eps /= 2
            cl = n_roots(a, mid - eps)
            split(a, mid - eps, cl)
            out.append((mid - eps, mid + eps))
            split(mid + eps, b, count - cl - 1)
            return
        cl = n_roots(a, mid)
        split(a, mid, cl)
        split(mid, b, count - cl)

    split(-B, B, n_roots(-B, B))
    out.sort(key=lambda ab: ab[0])
    return out


def isolate_real_roots(p: Sequence[int]) -> List[RealRootEnclosure]:
    """Isolating enclosures for all distinct real roots of p, with multiplicities."""
    p = strip(list(p))
    if is_zero(p):
        raise ValueError("zero polynomial")
    if degree(p) < 1:
        return []
    nz = 0
    while p[-1] == 0:
        p = p[:-1]
        nz += 1
    out: List[RealRootEnclosure] = []
    if degree(p) >= 1:
        for q, m in yun_squarefree(p):
            for lo, hi in _isolate_squarefree(q):
                out.append(RealRootEnclosure(tuple(q), lo, hi, m))
    if nz:
        out = [refine_away_from_zero(e) for e in out]
        eps = Fraction(1, 2)
        for e in out:
            gap = min(abs(e.lo), abs(e.hi))
            if gap > 0:
                eps = min(eps, gap / 2)
        out.append(RealRootEnclosure((1, 0), -eps, eps, nz))
    out.sort(key=lambda e: e.lo)
    # distinct roots of coprime factors: shrink until pairwise disjoint
    while True:
        out.sort(key=lambda e: e.lo)
        overlap = False
        for i in range(len(out) - 1):
            if out[i].hi > out[i + 1].lo:
                out[i] = refine(out[i], out[i].width() / 4)
                out[i + 1] = refine(out[i + 1], out[i + 1].width() / 4)
                overlap = True
        if not overlap:
            return out


# ---------------------------------------------------------------------------
# exact unit-circle root counting
# ---------------------------------------------------------------------------


def _palindromic_reduce(u: Sequence[int]) -> list:
    """For palindromic u of even degree 2m, the h with u(z) = z^m h(z + 1/z)."""
    n = degree(u)
    if n % 2 != 0:
        raise ArithmeticDomainError("palindromic reduction needs even degree")
    m = n // 2
    # T_j stands for z^j + z^-j: T_0 = 2, T_1 = x, T_j = x T_{j-1} - T_{j-2}
    T: List[list] = [[2], [1, 0]]
    for j in range(2, m + 1):
        T.append(sub(mul([1, 0], T[j - 1]), T[j - 2]))
    h: list = [Fraction(u[m])]
    for j in range(1, m + 1):
        h = add(h, scale(T[j], Fraction(u[m - j])))
    return to_integer(h)


def unit_circle_roots(q: Sequence[int]) -> Tuple[int, bool, bool, list]:
    """Exact unit-circle root data for a squarefree integer polynomial.

    Returns (count, has_root_one, has_root_minus_one, h) where count is the
    number of roots with |z| = 1 and the real roots of h in (-2, 2)
    correspond one-to-one with the non-real circle root pairs.
    """
    q = primitive(q)
    while not is_zero(q) and q[-1] == 0:
        q = q[:-1]  # roots at zero are irrelevant here
    if degree(q) < 1:
        return 0, False, False, []
    u = gcd_int_poly(q, reverse(q))
    if degree(u) < 1:
        return 0, False, False, []
    e = sign_at_fraction(u, Fraction(1)) == 0
    f = sign_at_fraction(u, Fraction(-1)) == 0
    u2 = [Fraction(c) for c in u]
    if e:
        u2 = divexact(u2, [Fraction(1), Fraction(-1)])
    if f:
        u2 = divexact(u2, [Fraction(1), Fraction(1)])
    u2i = to_integer(u2)
    count = (1 if e else 0) + (1 if f else 0)
    if degree(u2i) >= 1:
        if reverse(u2i) != u2i or degree(u2i) % 2 != 0:
            raise ArithmeticDomainError(
                "internal error: inversion-closed factor is not palindromic"
            )
        h = _palindromic_reduce(u2i)
        count += 2 * count_real_roots(h, Fraction(-2), Fraction(2))
        return count, e, f, h
    return count, e, f, []


# ---------------------------------------------------------------------------
# certified complex root enclosures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexRootEnclosure:
    """Certified box holding one distinct root, counted ``multiplicity`` times."""

    box: ComplexBox
    multiplicity: int = 1

    def is_real(self) -> bool:
        return self.box.is_real_line()

    def modulus(self) -> IntervalScalar:
        return self.box.modulus()


class EnclosureError(ArithmeticDomainError):
    pass


def horner_box(coeffs: Sequence[ComplexBox], z: ComplexBox, digits: int) -> ComplexBox:
    acc = ComplexBox.from_fractions(0, 0, digits)
    for c in coeffs:
        acc = acc.mul(z).add(c)
    return acc


def coeff_boxes(p: Sequence[Fraction], digits: int) -> List[ComplexBox]:
    return [ComplexBox.from_fractions(Fraction(c), 0, digits) for c in p]


def newton_certify(
    coeffs: Sequence[ComplexBox],
    dcoeffs: Sequence[ComplexBox],
    z_re: Fraction,
    z_im: Fraction,
    radius: Fraction,
    digits: int,
) -> Optional[ComplexBox]:
    """Interval Newton test around an approximate root.

    Success certifies that the returned box (a strict subset of the trial
    box) contains exactly one root of every polynomial in the coefficient
    family.
    """
    Z = ComplexBox(
        IntervalScalar.from_fractions(z_re - radius, z_re + radius, digits),
        IntervalScalar.from_fractions(z_im - radius, z_im + radius, digits),
    )
    mid = ComplexBox.from_fractions(z_re, z_im, digits)
    try:
        fz = horner_box(coeffs, mid, digits)
        dfZ = horner_box(dcoeffs, Z, digits)
        N = mid.sub(fz.div(dfZ))
    except ArithmeticDomainError:
        return None
    if N.strictly_inside(Z):
        return N
    return None


def newton_refine(
    coeffs: Sequence[ComplexBox],
    dcoeffs: Sequence[ComplexBox],
    box: ComplexBox,
    width: Fraction,
    digits: int,
    max_iter: int = 80,
) -> ComplexBox:
    cur = box
    for _ in range(max_iter):
        if cur.width_fraction() <= width:
            return cur
        mid = ComplexBox.from_fractions(cur.re.mid_fraction(), cur.im.mid_fraction(), digits)
        try:
            fz = horner_box(coeffs, mid, digits)
            dfZ = horner_box(dcoeffs, cur, digits)
            N = mid.sub(fz.div(dfZ))
            nxt = ComplexBox(N.re.intersect(cur.re), N.im.intersect(cur.im))
        except ArithmeticDomainError:
            break
        if nxt.width_fraction() >= cur.width_fraction():
            break
        cur = nxt
    if cur.width_fraction() <= width:
        return cur
    raise EnclosureError("Newton refinement stalled before target width")


def _approx_roots(p: Sequence[Fraction], dps: int) -> list:
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in p]
        try:
            return mpmath.polyroots(coeffs, maxsteps=300, extraprec=120)
        except (mpmath.libmp.NoConvergence, ZeroDivisionError):
            return []


def _mpf_fraction(x) -> Fraction:
    sign, man, exp, _bc = mpmath.mpf(x)._mpf_
    man = int(man)
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << (-exp))


def _pairwise_disjoint(boxes: Sequence[ComplexBox]) -> bool:
    for a, b in itertools.combinations(boxes, 2):
        if a.intersects(b):
            return False
    return True


def enclose_roots_squarefree(
    q: Sequence[int],
    target_width: Fraction,
    digits_start: int = 64,
    digits_cap: int = 20000,
) -> List[ComplexRootEnclosure]:
    """Certified pairwise-disjoint enclosures of all roots of squarefree q."""
    q = primitive(q)
    n = degree(q)
    if n < 1:
        return []
    out: List[ComplexRootEnclosure] = []
    if q[-1] == 0:
        # squarefree, so the root at zero is simple; enclose it exactly
        q = q[:-1]
        n = degree(q)
        zdigits = digits_start
        out.append(
            ComplexRootEnclosure(
                ComplexBox(IntervalScalar.exact_int(0, zdigits), IntervalScalar.exact_int(0, zdigits)),
                1,
            )
        )
        if n < 1:
            return out
    real_iso = _isolate_squarefree(q)
    real_encs = [RealRootEnclosure(tuple(q), lo, hi) for lo, hi in real_iso]
    if out:
        real_encs = [refine_away_from_zero(e) for e in real_encs]
    n_real = len(real_encs)
    n_pairs, rem = divmod(n - n_real, 2)
    if rem:
        raise EnclosureError("internal error: real/complex root count mismatch")
    qf = [Fraction(c) for c in q]
    dqf = derivative(qf)
    for digits in precision_ladder(digits_start, digits_cap):
        # shrink the working width with the precision rung so that closely
        # spaced roots eventually separate
        width = min(target_width, Fraction(1, 10) ** max(6, digits // 2))
        real_boxes = []
        ok = True
        for enc in real_encs:
            r = refine(enc, width / 4)
            box = r.as_box(digits)
            if box.width_fraction() > target_width:
                ok = False
                break
            real_boxes.append(box)
        if not ok:
            continue
        upper: List[ComplexBox] = []
        if n_pairs:
            approx = _approx_roots(qf, digits + 10)
            if len(approx) != n:
                continue
            cands = sorted(approx, key=lambda z: -mpmath.im(z))[:n_pairs]
            if any(mpmath.im(z) <= 0 for z in cands):
                continue
            cboxes = coeff_boxes(qf, digits)
            dboxes = coeff_boxes(dqf, digits)
            for z in cands:
                zr, zi = _mpf_fraction(mpmath.re(z)), _mpf_fraction(mpmath.im(z))
                radius = Fraction(1, 2) ** max(8, digits_to_bits(digits) // 3)
                box = None
                while radius <= Fraction(1, 2):
                    box = newton_certify(cboxes, dboxes, zr, zi, radius, digits)
                    if box is not None:
                        break
                    radius *= 4
                if box is None:
                    ok = False
                    break
                try:
                    box = newton_refine(cboxes, dboxes, box, width, digits)
                except EnclosureError:
                    ok = False
                    break
                if box.im.lo_fraction() <= 0:
                    ok = False
                    break
                upper.append(box)
            if not ok:
                continue
        all_boxes = real_boxes + upper + [b.conjugate() for b in upper]
        if out:
            all_boxes = all_boxes + [out[0].box]
        if _pairwise_disjoint(all_boxes):
            kept = all_boxes[: len(all_boxes) - 1] if out else all_boxes
            return out + [ComplexRootEnclosure(b, 1) for b in kept]
    raise EnclosureError("could not certify disjoint root enclosures at precision cap")


def enclose_all_roots(
    p: Sequence[Fraction],
    target_width: Fraction,
    digits_start: int = 64,
    digits_cap: int = 20000,
) -> List[ComplexRootEnclosure]:
    """Certified enclosures of all roots of p with multiplicities.

    Enclosures are pairwise disjoint for distinct roots; multiplicities sum
    to deg(p); each box has width <= target_width.
    """
    ip = to_integer(p)
    if degree(ip) < 1:
        raise ValueError("enclose_all_roots needs a non-constant polynomial")
    factors = yun_squarefree(ip)
    if not factors:
        raise EnclosureError("square-free decomposition failed")
    width = target_width
    for _ in range(64):
        out: List[ComplexRootEnclosure] = []
        for q, m in factors:
            encs = enclose_roots_squarefree(q, width, digits_start, digits_cap)
            out.extend(ComplexRootEnclosure(e.box, m) for e in encs)
        if _pairwise_disjoint([e.box for e in out]):
            return out
        width /= 16
    raise EnclosureError("could not separate enclosures of distinct roots")


# ---------------------------------------------------------------------------
# root condition / unit disk classification
# ---------------------------------------------------------------------------


class RootCondition(enum.Enum):
    SATISFIED_STRICTLY = "satisfied_strictly"
    SATISFIED = "satisfied"
    VIOLATED = "violated"


def _classify_moduli(
    q: Sequence[int],
    expected_on_circle: int,
    digits_start: int,
    digits_cap: int,
) -> Tuple[int, int, int]:
    """Exact (inside, on, outside) unit-circle counts for squarefree q."""
    for digits in precision_ladder(max(digits_start, 32), digits_cap):
        width = Fraction(1, 10) ** max(6, digits // 2)
        try:
            encs = enclose_roots_squarefree(q, width, digits, digits)
        except EnclosureError:
            continue
        inside = outside = straddle = 0
        for e in encs:
            msq = e.box.abs_sq()
            if msq.hi_fraction() < 1:
                inside += 1
            elif msq.lo_fraction() > 1:
                outside += 1
            else:
                straddle += 1
        if straddle == expected_on_circle:
            return inside, expected_on_circle, outside
    raise EnclosureError("unit-disk classification did not converge at precision cap")


def _strip_zero_roots(q: Sequence[int]) -> list:
    qq = list(q)
    while not is_zero(qq) and qq[-1] == 0:
        qq = qq[:-1]
    return qq


def root_condition(
    p: Sequence[Fraction],
    digits_start: int = 64,
    digits_cap: int = 20000,
) -> RootCondition:
    """Exact root-condition test: all |root| <= 1, modulus-1 roots simple."""
    ip = to_integer(p)
    if degree(ip) < 1:
        raise ValueError("root condition needs a non-constant polynomial")
    strict = True
    for q, m in yun_squarefree(ip):
        qq = _strip_zero_roots(q)  # roots at zero lie strictly inside
        if degree(qq) < 1:
            continue
        n_circ, _e, _f, _h = unit_circle_roots(qq)
        if n_circ > 0 and m >= 2:
            return RootCondition.VIOLATED
        _inside, on, outside = _classify_moduli(qq, n_circ, digits_start, digits_cap)
        if outside > 0:
            return RootCondition.VIOLATED
        if on > 0:
            strict = False
    return RootCondition.SATISFIED_STRICTLY if strict else RootCondition.SATISFIED


def all_roots_strictly_inside(
    p: Sequence[Fraction],
    digits_start: int = 64,
    digits_cap: int = 20000,
) -> bool:
    """Exact test: every root has modulus < 1."""
    ip = to_integer(p)
    if degree(ip) < 1:
        raise ValueError("needs a non-constant polynomial")
    for q, _m in yun_squarefree(ip):
        qq = _strip_zero_roots(q)
        if degree(qq) < 1:
            continue
        n_circ, _e, _f, _h = unit_circle_roots(qq)
        if n_circ > 0:
            return False
        _inside, _on, outside = _classify_moduli(qq, 0, digits_start, digits_cap)
        if outside > 0:
            return False
    return True


# ---------------------------------------------------------------------------
# serialization (JSON arrays of decimal integer strings, descending)
# ---------------------------------------------------------------------------


def int_poly_to_json(p: Sequence[int]) -> List[str]:
    return [str(int(c)) for c in strip(p)]


def int_poly_from_json(data: Sequence[str]) -> list:
    return strip([int(s) for s in data])
