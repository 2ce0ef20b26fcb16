"""Power operations on formal group laws with exact coefficients.

Everything here works in truncated power series over a rational
coefficient ring, checking integrality at each step that is supposed to
land back in the integral lattice.  The centerpiece is the pipeline that
computes the total power operation on the coefficient [CP^n]: build the
isogeny g(x, alpha) = x (x +_F alpha), change variables to k(y, alpha) =
g(alpha y, alpha) / alpha^2, invert it, read off the y^n coefficient
f_n(alpha) of l'(alpha k^{-1}) (k^{-1})', split off a polynomial multiple
h_n of the cofactor <2> so that the remainder is divisible by alpha^{2n},
and divide.  The quotient is the operation's value; dividing exactly is
the step with actual content.
"""

from __future__ import annotations

from fractions import Fraction

from .polynomial import QQ, Generator, GradedPolynomial, PolynomialRing, QuotientPresentation
from .series import TruncatedSeries, signature

__all__ = [
    "LogarithmPreset",
    "preset",
    "register_preset",
    "fgl_from_log",
    "n_series",
    "bracket2_series",
    "isogeny_g",
    "appendix_pipeline",
    "reduce_mod_two_series",
    "verify_isogeny_derivative",
    "check_associativity",
    "PowerOpResult",
    "ReductionResult",
]


class LogarithmPreset:
    """A coefficient ring together with an exact logarithm.

    ``log_powers`` maps exponents to coefficients of the log series; the
    linear coefficient must be 1.  The ring's scalars must be rational so
    the log can be composition-inverted; integrality of downstream output
    is a separate check, not an assumption.
    """

    def __init__(self, name, ring, log_powers, description=""):
        self.name = name
        self.ring = ring
        self.log_powers = dict(log_powers)
        self.description = description
        lin = self.log_powers.get(1)
        if lin is None or lin != ring.one():
            raise ValueError("logarithms here must start with the identity term")

    def log_series(self, sig, var):
        t = TruncatedSeries.variable(sig, self.ring, var)
        out = TruncatedSeries.zero(sig, self.ring)
        for e in sorted(self.log_powers):
            out = out + (t**e).scale(self.log_powers[e])
        return out

    def exp_series(self, sig, var):
        """Composition inverse of the log in the same variable."""
        return self.log_series(sig, var).compositional_inverse(var)

    def log_derivative(self, sig, var):
        return self.log_series(sig, var).derivative(var)

    def projective_coefficient(self, n):
        """Coefficient of x^n in l'(x); the image of the n-th projective
        space class under the classifying map for this preset."""
        c = self.log_powers.get(n + 1)
        if c is None:
            return self.ring.zero()
        return c.scale(n + 1)

    def __repr__(self):
        return "<preset %s>" % self.name


_PRESETS = {}


def register_preset(p):
    _PRESETS[p.name] = p
    return p


def preset(name):
    try:
        return _PRESETS[name]
    except KeyError:
        raise KeyError("unknown formal group preset %r" % name) from None


def _build_presets():
    additive = PolynomialRing(QQ, [])
    register_preset(
        LogarithmPreset(
            "additive",
            additive,
            {1: additive.one()},
            "the additive law over the integers; an independent cross-check",
        )
    )
    ring = PolynomialRing(
        QQ,
        [Generator("v3", 14)],
        QuotientPresentation([({"v3": 2}, {})]),
    )
    register_preset(
        LogarithmPreset(
            "appendix-z-v3",
            ring,
            {1: ring.one(), 8: ring.gen("v3").scale(Fraction(1, 2))},
            "Z[v3]/(v3^2) with logarithm x + (v3/2) x^8",
        )
    )


_build_presets()


def fgl_from_log(p, x_order=12, y_order=12, check=True):
    """The formal group law F(x, y) = exp(log x + log y) for a preset.

    With ``check`` on, verifies integrality, F(x, 0) = x, symmetry, and
    that log F = log x + log y under the truncation.
    """
    sig = signature(("x", "y"), (x_order, y_order))
    lx = p.log_series(sig, "x")
    ly = p.log_series(sig, "y")
    onevar = signature(("t",), (max(x_order, y_order),))
    exp = p.exp_series(onevar, "t")
    F = exp.substitute({"t": lx + ly})
    if check:
        F.assert_integral("formal group law")
        x = TruncatedSeries.variable(sig, p.ring, "x")
        zero = TruncatedSeries.zero(sig, p.ring)
        at_zero = F.substitute({"x": x, "y": zero})
        if at_zero != x:
            raise ArithmeticError("F(x, 0) != x for preset %s" % p.name)
        y = TruncatedSeries.variable(sig, p.ring, "y")
        if F.substitute({"x": y, "y": x}) != F:
            raise ArithmeticError("F is not symmetric for preset %s" % p.name)
        logf = p.log_series(onevar, "t").substitute({"t": F})
        if logf != lx + ly:
            raise ArithmeticError("log F != log x + log y for preset %s" % p.name)
    return F


def n_series(p, n, order=12, var="t", check=True):
    """The n-series [n](t) = exp(n log t)."""
    sig = signature((var,), (order,))
    log = p.log_series(sig, var)
    series = p.exp_series(sig, var).substitute({var: log.scale(n)})
    if check:
        series.assert_integral("%d-series" % n)
    return series


def bracket2_series(p, order=12, var="alpha"):
    """The cofactor <2> with [2](t) = t <2>(t), as a series in ``var``."""
    two = n_series(p, 2, order + 1, var)
    return two.divide_exact(var, 1)


def isogeny_g(p, x_order=8, alpha_order=20):
    """g(x, alpha) = x (x +_F alpha) over the (x, alpha) signature."""
    F = fgl_from_log(p, x_order + 1, alpha_order, check=False)
    sig = signature(("x", "alpha"), (x_order + 1, alpha_order))
    x = TruncatedSeries.variable(sig, p.ring, "x")
    alpha = TruncatedSeries.variable(sig, p.ring, "alpha")
    return x * F.substitute({"x": x, "y": alpha})


class ReductionResult:
    """Outcome of reducing a series modulo the two-series ideal.

    ``reduced + bracket2 * multiplier`` recovers the input exactly, and
    ``multiplier`` only involves positive powers of the series variable,
    so the difference lies in the ideal generated by the two-series.
    """

    def __init__(self, reduced, multiplier, bracket2, var):
        self.reduced = reduced
        self.multiplier = multiplier
        self.bracket2 = bracket2
        self.var = var

    def congruence_holds(self, original):
        return self.reduced + self.bracket2 * self.multiplier == original

    def __repr__(self):
        return "<reduction %s>" % self.reduced


def reduce_mod_two_series(series, p, var="alpha", max_passes=10_000):
    """Reduce coefficients of positive powers of ``var`` modulo 2.

    Each scalar 2q + r on a positive power of ``var`` is replaced by r,
    trading the even part for (2 - <2>) times the same monomial; constant
    terms in ``var`` are untouched.  Terminates because the traded terms
    climb in degree until truncation or nilpotence kills them.
    """
    sig = series.sig
    i = sig.index(var)
    ring = series.ring
    bracket2 = bracket2_series(p, sig.orders[i], var).substitute(
        {var: TruncatedSeries.variable(sig, ring, var)}
    )
    work = series
    multiplier = TruncatedSeries.zero(sig, ring)
    for _ in range(max_passes):
        excess_vec = None
        for vec in sorted(work.terms):
            if vec[i] == 0:
                continue
            poly = work.terms[vec]
            for mono in sorted(poly.terms):
                c = poly.terms[mono]
                if c.denominator != 1:
                    raise ArithmeticError(
                        "cannot reduce a non-integral coefficient: %s" % c
                    )
                q = c // 2
                if q != 0:
                    excess_vec = (vec, mono, q)
                    break
            if excess_vec:
                break
        if excess_vec is None:
            return ReductionResult(work, multiplier, bracket2, var)
        vec, mono, q = excess_vec
        excess = TruncatedSeries(sig, ring, {vec: ring.make({mono: Fraction(q)})})
        work = work - excess * bracket2
        multiplier = multiplier + excess
    raise ArithmeticError("mod-2 series reduction did not terminate")


class PowerOpResult:
    """All intermediates of one run of the power-operation pipeline."""

    def __init__(self, **fields):
        self.__dict__.update(fields)

    def summary(self):
        keys = (
            "n",
            "preset",
            "bracket2",
            "g",
            "k",
            "kinv",
            "f_n",
            "h_n",
            "raw",
            "reduced",
        )
        out = {}
        for key in keys:
            value = getattr(self, key)
            out[key] = value if isinstance(value, (int, str)) else str(value)
        out["checks"] = [list(row) for row in self.checks]
        return out


def appendix_pipeline(n, p=None, alpha_order=None, y_order=None):
    """Value of the total power operation on the n-th projective class.

    Returns a ``PowerOpResult`` carrying every intermediate series and a
    list of (label, ok) rows for the checks performed along the way.
    """
    if n < 1:
        raise ValueError("the pipeline needs n >= 1")
    if p is None:
        p = preset("appendix-z-v3")
    if alpha_order is None:
        alpha_order = 2 * n + 16
    if y_order is None:
        y_order = n + 2
    checks = []

    bracket2 = bracket2_series(p, alpha_order, "alpha")
    bracket2.assert_integral("<2>")
    two = n_series(p, 2, alpha_order + 1, "alpha")
    alpha1 = TruncatedSeries.variable(signature(("alpha",), (alpha_order + 1,)), p.ring, "alpha")
    checks.append(("two-series factors as alpha <2>", alpha1 * _lift(bracket2, alpha_order + 1) == two))

    g = isogeny_g(p, max(y_order, 9), alpha_order)
    ysig = signature(("y", "alpha"), (y_order, alpha_order))
    yvar = TruncatedSeries.variable(ysig, p.ring, "y")
    avar = TruncatedSeries.variable(ysig, p.ring, "alpha")
    k = g.substitute({"x": avar * yvar, "alpha": avar}).divide_exact("alpha", 2)
    kinv = k.compositional_inverse("y")
    checks.append(("k has linear term y", k.coefficient({"y": 1}) == p.ring.one()))

    ksig = kinv.sig
    lprime = p.log_derivative(signature(("t",), (8 * (y_order + 1),)), "t")
    integrand = lprime.substitute(
        {"t": TruncatedSeries.variable(ksig, p.ring, "alpha") * kinv}
    ) * kinv.derivative("y")
    f_n = integrand.coefficient_series("y", n)

    asig = f_n.sig
    ap = TruncatedSeries.variable(asig, p.ring, "alpha")
    cp = p.projective_coefficient(n)
    cp_sq = TruncatedSeries.constant(asig, p.ring, cp * cp) * ap ** (2 * n)
    b2 = _lift(bracket2, asig.orders[0]) if asig.orders[0] != bracket2.sig.orders[0] else bracket2
    h_n = _truncate_var((f_n - cp_sq) * b2.invert(), "alpha", 2 * n + 1)
    h_n.assert_integral("h_n")
    checks.append(
        ("h_n is a polynomial of degree <= 2n", (h_n.max_exponent("alpha") or 0) <= 2 * n)
    )

    raw = (f_n - h_n * b2).divide_exact("alpha", 2 * n)
    raw.assert_integral("power operation value")
    checks.append(("value squares to cp^2 at alpha = 0", raw.constant_coefficient() == cp * cp))

    reduction = reduce_mod_two_series(raw, p, "alpha")
    checks.append(("reduction is a congruence", reduction.congruence_holds(raw)))
    second = reduce_mod_two_series(reduction.reduced, p, "alpha")
    checks.append(("reduction is idempotent", second.reduced == reduction.reduced))

    return PowerOpResult(
        n=n,
        preset=p.name,
        two_series=two,
        bracket2=bracket2,
        g=g,
        k=k,
        kinv=kinv,
        integrand=integrand,
        f_n=f_n,
        cp=cp,
        h_n=h_n,
        raw=raw,
        reduced=reduction.reduced,
        reduction=reduction,
        checks=checks,
    )


def _lift(series, order):
    """Re-embed a univariate series into a larger truncation order."""
    sig = signature(series.sig.variables, (order,), series.sig.weights)
    return TruncatedSeries(sig, series.ring, dict(series.terms))


def _truncate_var(series, var, bound):
    i = series.sig.index(var)
    return TruncatedSeries(
        series.sig,
        series.ring,
        {vec: c for vec, c in series.terms.items() if vec[i] < bound},
    )


def verify_isogeny_derivative(p=None, x_order=5, alpha_order=24):
    """Check the derivative form of the isogeny equation.

    g'(x, a) l'_{target}(g(x, a), a) - a l'(x) must be <2> times an
    integral series, where the target log derivative has the pipeline's
    computed operation values as coefficients.  Returns (ok, h).
    """
    if p is None:
        p = preset("appendix-z-v3")
    g = isogeny_g(p, x_order, alpha_order)
    sig = g.sig
    images = [
        appendix_pipeline(m, p, alpha_order=alpha_order).raw for m in range(1, x_order)
    ]
    target_lprime = TruncatedSeries.constant(sig, p.ring, p.ring.one())
    avar = TruncatedSeries.variable(sig, p.ring, "alpha")
    for m, value in enumerate(images, start=1):
        lifted = value.substitute({"alpha": avar})
        target_lprime = target_lprime + lifted * g**m
    lprime = p.log_derivative(signature(("t",), (x_order,)), "t").substitute(
        {"t": TruncatedSeries.variable(sig, p.ring, "x")}
    )
    bracket2 = bracket2_series(p, alpha_order, "alpha").substitute({"alpha": avar})
    h = (g.derivative("x") * target_lprime - avar * lprime) * bracket2.invert()
    return h.is_integral(), h


def check_associativity(p, order=6):
    """F(F(x, y), z) = F(x, F(y, z)) under a total-degree truncation."""
    big = max(3 * order, 12)
    F = fgl_from_log(p, big, big, check=False)
    sig = signature(("x", "y", "z"), (big, big, big), total_order=order + 1)
    x = TruncatedSeries.variable(sig, p.ring, "x")
    y = TruncatedSeries.variable(sig, p.ring, "y")
    z = TruncatedSeries.variable(sig, p.ring, "z")
    xy = F.substitute({"x": x, "y": y})
    yz = F.substitute({"x": y, "y": z})
    left = F.substitute({"x": xy, "y": z})
    right = F.substitute({"x": x, "y": yz})
    return left == right
