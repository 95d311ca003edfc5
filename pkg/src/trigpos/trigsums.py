"""The trigonometric sums under study and their exact polynomial reductions.

A `TrigSum` is a finite sum  sum_k  c_k * g(freq_k * theta + phase_k * pi)
with g in {sin, cos}, rational frequencies and phases, and coefficients kept
as rational enclosures.  Angle substitutions clear the fractional frequencies
exactly, after which Chebyshev identities (cos kt = T_k(cos t),
sin((k+1)t) = sin t * U_k(cos t)) turn the sum into a polynomial with exact
(or enclosure) coefficients -- the inputs for the Sturm certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from trigpos.exact import Enclosure, Polynomial, poly_with_interval_coeffs
from trigpos.precision import working_dps

__all__ = [
    "TrigTerm",
    "TrigSum",
    "pochhammer_coeff",
    "build_U_n",
    "build_varsigma",
    "build_ell",
    "build_omega",
    "chebyshev_T",
    "chebyshev_U",
    "Reduction",
    "reduce_to_polynomial",
    "case_P",
    "case_Q",
    "case_R",
    "case_q",
    "SturmTarget",
    "SturmOutcome",
    "sturm_case_plan",
    "run_sturm_target",
]

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Terms and sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrigTerm:
    """coeff * kind(freq * theta + phase_pi * pi), all parameters rational."""

    coeff: Enclosure
    freq: Fraction
    phase_pi: Fraction
    kind: str  # "sin" | "cos"

    def __post_init__(self):
        if self.kind not in ("sin", "cos"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.freq < 0:
            raise ValueError("negative frequency")


@dataclass(frozen=True)
class TrigSum:
    terms: tuple[TrigTerm, ...]
    label: str = ""

    def eval_mp(self, theta):
        """Midpoint evaluation at working precision (mpf)."""
        with mp.workdps(working_dps()):
            th = mp.mpf(theta) if not hasattr(theta, "_mpf_") else theta
            total = mp.mpf(0)
            for t in self.terms:
                g = mp.sin if t.kind == "sin" else mp.cos
                arg = mp.mpf(t.freq.numerator) / t.freq.denominator * th \
                    + mp.pi * t.phase_pi.numerator / t.phase_pi.denominator
                total += mp.mpf(t.coeff.mid.numerator) / t.coeff.mid.denominator * g(arg)
            return total

    def coeff_err(self) -> Fraction:
        """Bound on evaluation error induced by coefficient enclosure widths."""
        return sum((t.coeff.width / 2 for t in self.terms), Fraction(0))

    def lipschitz(self) -> Fraction:
        """Exact bound on |d/dtheta|: sum of |coeff|_max * freq."""
        total = Fraction(0)
        for t in self.terms:
            cmax = max(abs(t.coeff.lo), abs(t.coeff.hi))
            total += cmax * t.freq
        return total

    def float_terms(self):
        """(coeff_mid, freq, phase_in_radians-less-pi, kind) floats for vector eval."""
        return [(float(t.coeff.mid), float(t.freq), float(t.phase_pi), t.kind)
                for t in self.terms]

    def substitute_theta(self, t_coeff: Fraction, t_shift_pi: Fraction,
                         label: str | None = None) -> "TrigSum":
        """Rewrite in a new variable t where theta = t_coeff * t + t_shift_pi * pi.

        Exact: frequencies scale by t_coeff, phases absorb freq * t_shift_pi.
        """
        t_coeff = Fraction(t_coeff)
        t_shift_pi = Fraction(t_shift_pi)
        if t_coeff <= 0:
            raise ValueError("variable change must preserve orientation")
        new_terms = tuple(
            TrigTerm(t.coeff, t.freq * t_coeff, t.phase_pi + t.freq * t_shift_pi, t.kind)
            for t in self.terms
        )
        return TrigSum(new_terms, label if label is not None else self.label)


# ---------------------------------------------------------------------------
# Coefficients
# ---------------------------------------------------------------------------


def _poch_fraction(mu: Fraction, k: int) -> Fraction:
    d = Fraction(1)
    for i in range(k):
        d *= (mu + i)
        d /= (i + 1)
    return d


def pochhammer_coeff(mu, k: int) -> Enclosure:
    """Enclosure of (mu)_k / k!; exact (degenerate) for exact rational mu.

    For interval mu with mu.lo > 0 every factor (mu+i)/(i+1) is positive and
    increasing in mu, so the product is monotone and the endpoint products
    enclose it tightly.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    mu = _as_mu_enclosure(mu)
    if mu.is_exact():
        v = _poch_fraction(mu.lo, k)
        return Enclosure(v, v)
    if mu.lo <= 0:
        raise ValueError("interval coefficients need mu > 0")
    return Enclosure(_poch_fraction(mu.lo, k), _poch_fraction(mu.hi, k))


def _as_mu_enclosure(mu) -> Enclosure:
    if isinstance(mu, Enclosure):
        return mu
    if isinstance(mu, mp.mpf):
        return Enclosure.exact(_fraction_from_mpf(mu))
    return Enclosure.exact(Fraction(mu))


# ---------------------------------------------------------------------------
# The sums under study
# ---------------------------------------------------------------------------


def build_U_n(n: int, mu) -> TrigSum:
    """sum_{k<=n} d_k cos((2k + 1/3) phi - pi/6) with d_k = (mu)_k / k!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    mu = _as_mu_enclosure(mu)
    terms = tuple(
        TrigTerm(pochhammer_coeff(mu, k), 2 * k + Fraction(1, 3), Fraction(-1, 6), "cos")
        for k in range(n + 1)
    )
    return TrigSum(terms, f"U_{n}")


def build_varsigma(n: int, rho, mu) -> TrigSum:
    """sum_{k<=n} d_k sin((2k + rho) theta)."""
    rho = Fraction(rho)
    mu = _as_mu_enclosure(mu)
    terms = tuple(
        TrigTerm(pochhammer_coeff(mu, k), 2 * k + rho, Fraction(0), "sin")
        for k in range(n + 1)
    )
    return TrigSum(terms, f"varsigma_{n}")


def build_ell(n: int, rho, mu) -> TrigSum:
    """sum_{k<=n} d_k cos((2k + rho) theta - (rho - 1/2) pi).

    Equals build_varsigma evaluated at pi - theta (checked by tests, used by
    the region bounds in the flipped variable).
    """
    rho = Fraction(rho)
    mu = _as_mu_enclosure(mu)
    terms = tuple(
        TrigTerm(pochhammer_coeff(mu, k), 2 * k + rho, HALF - rho, "cos")
        for k in range(n + 1)
    )
    return TrigSum(terms, f"ell_{n}")


def build_omega(n: int) -> TrigSum:
    """sum_{k<=n} ((1/2)_k / k!) sin((2k + 1/3) theta) -- the mu = 1/2 sine sum."""
    terms = tuple(
        TrigTerm(pochhammer_coeff(HALF, k), 2 * k + Fraction(1, 3), Fraction(0), "sin")
        for k in range(n + 1)
    )
    return TrigSum(terms, f"omega_{n}")


# ---------------------------------------------------------------------------
# Chebyshev polynomials (exact)
# ---------------------------------------------------------------------------


def chebyshev_T(k: int) -> Polynomial:
    if k < 0:
        raise ValueError("negative order")
    t0, t1 = Polynomial([1]), Polynomial([0, 1])
    if k == 0:
        return t0
    x2 = Polynomial([0, 2])
    for _ in range(k - 1):
        t0, t1 = t1, x2 * t1 - t0
    return t1


def chebyshev_U(k: int) -> Polynomial:
    if k < 0:
        raise ValueError("negative order")
    u0, u1 = Polynomial([1]), Polynomial([0, 2])
    if k == 0:
        return u0
    x2 = Polynomial([0, 2])
    for _ in range(k - 1):
        u0, u1 = u1, x2 * u1 - u0
    return u1


# ---------------------------------------------------------------------------
# Reduction to polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    """Result of rewriting a TrigSum as prefactor(t) * poly(x(t)).

    coeffs are Enclosures (degenerate when the input coefficients were exact).
    """

    label: str
    prefactor: str  # "1" | "sin(t)" | "sin(theta/3)"
    substitution: str
    coeffs: tuple[Enclosure, ...]

    def exact_polynomial(self) -> Polynomial:
        if any(not c.is_exact() for c in self.coeffs):
            raise ValueError("coefficients are genuine intervals; use envelopes()")
        return Polynomial([c.lo for c in self.coeffs])

    def envelopes(self, x_interval) -> tuple[Polynomial, Polynomial]:
        return poly_with_interval_coeffs(self.coeffs, x_interval)

    def midpoint_polynomial(self) -> Polynomial:
        return Polynomial([c.mid for c in self.coeffs])


def _normalized_terms(tsum: TrigSum):
    """Split phases into quarter-turn multiples: returns (sign, m, kind) per term.

    Requires every frequency to be a nonnegative integer and every phase an
    integer multiple of pi/2; raises otherwise.
    """
    out = []
    for t in tsum.terms:
        if t.freq.denominator != 1:
            raise ValueError(
                f"frequency {t.freq} is not an integer; apply substitute_theta first")
        quarter = t.phase_pi * 2
        if quarter.denominator != 1:
            raise ValueError(f"phase {t.phase_pi}*pi is not a multiple of pi/2")
        q = int(quarter) % 4  # g(x + q*pi/2)
        kind, sign = t.kind, 1
        for _ in range(q):  # advance by pi/2: sin->cos->-sin->-cos->sin
            if kind == "sin":
                kind = "cos"
            else:
                kind = "sin"
                sign = -sign
        out.append((sign, int(t.freq), kind, t.coeff))
    return out


def reduce_to_polynomial(tsum: TrigSum, substitution: str) -> Reduction:
    """Rewrite tsum(t) as prefactor(t) * poly(x) exactly.

    substitution "x = cos t": terms must share the trig flavor after phase
    normalization; cosines map through T_m, sines through sin t * U_(m-1).
    substitution "x = cos^2(theta/3)": the sum is first rewritten in
    t = theta/3; the resulting odd sine harmonics give an even polynomial in
    cos t, which is compressed into x = cos^2 t.
    """
    if substitution == "x = cos^2(theta/3)":
        inner = tsum.substitute_theta(Fraction(3), Fraction(0))  # theta = 3 t
        red = reduce_to_polynomial(inner, "x = cos t")
        if red.prefactor != "sin(t)":
            raise ValueError("squared-cosine substitution expects a pure sine sum")
        # compress even polynomial: only even powers of c may appear
        coeffs = red.coeffs
        for i in range(1, len(coeffs), 2):
            if coeffs[i].lo != 0 or coeffs[i].hi != 0:
                raise ValueError("polynomial is not even; cannot substitute x = cos^2")
        squished = tuple(coeffs[i] for i in range(0, len(coeffs), 2))
        return Reduction(tsum.label, "sin(theta/3)", substitution, squished)

    if substitution != "x = cos t":
        raise ValueError(f"unknown substitution {substitution!r}")

    norm = _normalized_terms(tsum)
    # sin(0*t) terms are identically zero and force no flavor
    kinds_nonzero = {k for _, m, k, _ in norm if not (k == "sin" and m == 0)}
    if kinds_nonzero == {"cos"} or not kinds_nonzero:
        acc: list[Enclosure] = [Enclosure.exact(0)]
        for sign, m, kind, coeff in norm:
            if kind == "sin":
                continue
            acc = _axpy(acc, coeff * sign, chebyshev_T(m))
        return Reduction(tsum.label, "1", substitution, tuple(acc))
    if kinds_nonzero == {"sin"}:
        acc = [Enclosure.exact(0)]
        for sign, m, kind, coeff in norm:
            if m == 0:
                continue
            acc = _axpy(acc, coeff * sign, chebyshev_U(m - 1))
        return Reduction(tsum.label, "sin(t)", substitution, tuple(acc))
    raise ValueError("mixed sine/cosine terms after normalization; no single prefactor")


def _axpy(acc: list[Enclosure], scale: Enclosure, poly: Polynomial) -> list[Enclosure]:
    """acc += scale * poly, in enclosure arithmetic."""
    out = list(acc)
    for i, c in enumerate(poly.coeffs):
        term = scale * c
        if i < len(out):
            out[i] = out[i] + term
        else:
            out.append(term)
    return out


# ---------------------------------------------------------------------------
# Named proof cases
# ---------------------------------------------------------------------------
#
# The certification targets are fixed trigonometric expressions in a shifted
# angle t; each constructor builds the t-domain sum explicitly so the case is
# reproducible by label.


def case_P(mu) -> Reduction:
    """-d2 + cos t + (1 - d1) cos 2t + (d2 - d1) cos 5t, reduced in x = cos t.

    Lower bound for 2 sin(phi) * U_n(phi) under t = (2 phi - pi)/3; relevant
    t ranges: (-pi/3, -7pi/27] and [-pi/5, 0], i.e. x in (1/2, cos(7pi/27)]
    and [cos(pi/5), 1].
    """
    mu = _as_mu_enclosure(mu)
    d1 = pochhammer_coeff(mu, 1)
    d2 = pochhammer_coeff(mu, 2)
    one = Enclosure.exact(1)
    terms = (
        TrigTerm(-d2, Fraction(0), Fraction(0), "cos"),
        TrigTerm(one, Fraction(1), Fraction(0), "cos"),
        TrigTerm(one - d1, Fraction(2), Fraction(0), "cos"),
        TrigTerm(d2 - d1, Fraction(5), Fraction(0), "cos"),
    )
    return reduce_to_polynomial(TrigSum(terms, "P"), "x = cos t")


def _sine_case(label: str, mu, orders: tuple[int, ...]) -> Reduction:
    mu = _as_mu_enclosure(mu)
    terms = tuple(
        TrigTerm(pochhammer_coeff(mu, k), Fraction(m), Fraction(0), "sin")
        for k, m in enumerate(orders)
    )
    return reduce_to_polynomial(TrigSum(terms, label), "x = cos t")


def case_Q(mu) -> Reduction:
    """sin t + d1 sin 7t + d2 sin 13t  (equals U_2(phi) at t = (phi + pi)/3).

    Reduced as sin(t) * poly(cos t); root-free target t in (pi/3, pi/2],
    i.e. x = cos t in [0, 1/2).
    """
    return _sine_case("Q", mu, (1, 7, 13))


def case_R(mu) -> Reduction:
    """sin t + d1 sin 7t + d2 sin 13t + d3 sin 19t  (U_3 under the same map)."""
    return _sine_case("R", mu, (1, 7, 13, 19))


def case_q(n: int) -> Reduction:
    """omega_n(theta) = sin(theta/3) * q_n(cos^2(theta/3)): returns q_n exactly."""
    red = reduce_to_polynomial(build_omega(n), "x = cos^2(theta/3)")
    return Reduction(f"q{n}", red.prefactor, red.substitution, red.coeffs)


# ---------------------------------------------------------------------------
# Sturm certification plan
# ---------------------------------------------------------------------------


def _fraction_from_mpf(x) -> Fraction:
    """Exact rational value of an mpf (binary -> Fraction, no rounding).

    The mantissa is coerced to a plain int: under the gmpy backend it is a
    gmpy2.mpz, and letting that leak into Fraction internals breaks mixed
    arithmetic much later (reflected operators raise SystemError).
    """
    sign, man, exp, _ = mp.mpf(x)._mpf_
    man = int(man)
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * Fraction(2) ** int(exp)
    return -v if sign else v


def _outward(value_fn, below: bool) -> Fraction:
    """Rational bound strictly below/above a computed real.

    value_fn is evaluated at padded precision; the pad exceeds the mpf
    rounding error by many orders of magnitude, so the returned rational is
    certified to lie on the requested side of the true value.
    """
    dps = working_dps() + 15
    with mp.workdps(dps):
        f = _fraction_from_mpf(value_fn())
    pad = Fraction(1, 10 ** (working_dps() + 5))
    return f - pad if below else f + pad


@dataclass(frozen=True)
class SturmTarget:
    """One root-counting obligation: no roots of the case polynomial in
    (interval[0], interval[1]], plus strict positivity at the listed
    (label, point) pairs.

    For interval (enclosure) coefficients the obligation applies to both
    envelope polynomials; point positivity is checked on the lower envelope,
    which makes it valid for every admissible coefficient choice.
    """

    name: str
    reduction: Reduction
    x_interval: tuple[Fraction, Fraction]
    positive_points: tuple[tuple[str, Fraction], ...] = ()
    note: str = ""

    def polynomials(self) -> tuple[Polynomial, ...]:
        """(lower, upper) envelopes, or the single exact polynomial."""
        if all(c.is_exact() for c in self.reduction.coeffs):
            return (self.reduction.exact_polynomial(),)
        return self.reduction.envelopes(self.x_interval)


def sturm_case_plan(mu) -> list[SturmTarget]:
    """All root-freeness obligations behind the finite proof cases.

    mu is the exponent enclosure used by the P/Q/R cases (the q_n cases have
    exact half-integer coefficients and ignore it).  Interval endpoints that
    are irrational (cosines of rational multiples of pi) are replaced by
    certified outward rational bounds, so every interval below *contains* the
    interval actually claimed.
    """
    q3_stated_lo = Fraction(37059, 100000)
    q3_derived_lo = _outward(lambda: mp.cos(7 * mp.pi / 24) ** 2, below=True)
    targets = [
        SturmTarget("q1", case_q(1), (Fraction(0), Fraction(1)),
                    (("q1(0)", Fraction(0)),), "no zeros in (0,1), positive at 0"),
        SturmTarget("q2", case_q(2), (Fraction(0), Fraction(1)),
                    (("q2(0)", Fraction(0)),), "no zeros in (0,1), positive at 0"),
        SturmTarget("q3", case_q(3), (q3_stated_lo, Fraction(1)),
                    (("q3(0.37059)", q3_stated_lo),), "stated interval [0.37059, 1]"),
        SturmTarget(
            "q3-derived", case_q(3),
            (q3_derived_lo,
             _outward(lambda: mp.cos(2 * mp.pi / 9) ** 2, below=False)),
            (("q3(cos^2(7pi/24))", q3_derived_lo),),
            "interval induced by theta in [2pi/3, 7pi/8]"),
    ]
    if mu is not None:
        mu = _as_mu_enclosure(mu)
        p_red = case_P(mu)
        q_red = case_Q(mu)
        r_red = case_R(mu)
        targets += [
            SturmTarget(
                "P-near-0", p_red,
                (Fraction(1, 2), _outward(lambda: mp.cos(7 * mp.pi / 27), below=False)),
                (("P(-pi/3)", Fraction(1, 2)), ("P(0)", Fraction(1))),
                "t in (-pi/3, -7pi/27]; note P(-pi/3) = -mu(mu+1)/4 < 0 exactly, "
                "so that point check cannot pass for any mu in (0,1]"),
            SturmTarget(
                "P-mid", p_red,
                (_outward(lambda: mp.cos(mp.pi / 5), below=True), Fraction(1)),
                (),
                "t in [-pi/5, 0]"),
            SturmTarget(
                "Q", q_red, (Fraction(0), Fraction(1, 2)),
                (("Q(pi/2)/sin", Fraction(0)),),
                "t in (pi/3, pi/2]; point x=0 is Q(pi/2) up to the positive sin t"),
            SturmTarget(
                "R", r_red, (Fraction(0), Fraction(1, 2)),
                (("R(pi/2)/sin", Fraction(0)),),
                "t in (pi/3, pi/2]; point x=0 is R(pi/2) up to the positive sin t"),
        ]
    return targets


@dataclass(frozen=True)
class SturmOutcome:
    """Result of running one SturmTarget: exact root counts per envelope
    (a single entry for exact coefficients) and per-point positivity flags."""

    name: str
    interval: tuple[Fraction, Fraction]
    root_counts: tuple[int, ...]
    point_results: tuple[tuple[str, bool], ...]
    note: str = ""

    @property
    def points_ok(self) -> bool:
        return all(ok for _, ok in self.point_results)

    @property
    def passed(self) -> bool:
        return self.points_ok and all(c == 0 for c in self.root_counts)


def run_sturm_target(target: SturmTarget) -> SturmOutcome:
    """Run the exact root count (and point checks) for one obligation."""
    from trigpos.exact import count_roots_in, sturm_chain

    polys = target.polynomials()
    a, b = target.x_interval
    counts = tuple(count_roots_in(sturm_chain(p), a, b) for p in polys)
    # point positivity on the lower envelope holds for every admissible
    # coefficient choice (the lower envelope minorizes all of them)
    points = tuple(
        (label, polys[0].sign_at(x) > 0) for label, x in target.positive_points
    )
    return SturmOutcome(target.name, (a, b), counts, points, target.note)
