"""Push-forward of the Chern character of the Pluecker line bundle, by
four independent routes.

For a rank-r bundle E and the Grassmann bundle of corank-d subbundles,
the push-forward of exp(theta) to the base is computed here

* as a sum over exponent vectors k with a Vandermonde-type numerator and
  factorial denominator ("closed"),
* as a sum over partitions weighted by standard-tableau counts
  ("schur"),
* as the constant term of a Laurent series, evaluated through the linear
  functional :func:`phi` ("constterm"),
* and by raw reduction in the flag-bundle quotient ring ("oracle").

All four agree exactly, and the test suite insists on it.  The published
closed form exists in two variants differing by one in each factorial of
the denominator; only the variant implemented as ``"proof"`` matches the
oracle and the classical degrees, but both are available for comparison
(see :func:`ch_pushforward_closed`).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .chow import FlagRing, GradedElement
from .exact import LaurentPoly, const_of_product, det, inv_factorial, vandermonde
from .symfunc import partitions_up_to, schur_delta, segre_series_poly, syt_count, weight

_ZERO = Fraction(0)
_ONE = Fraction(1)

PROOF = "proof"
DISPLAYED = "displayed"


def phi(f: LaurentPoly, nvars: int):
    """Linear functional taking f to the constant term of
    Delta(t) exp(1/t_0 + ... + 1/t_{d-1}) f.

    The exponential never gets materialized: a monomial of Delta * f with
    exponents (m_0, ..., m_{d-1}) contributes its coefficient times
    prod 1/m_i!, where 1/m! = 0 for negative m.  Coefficients may be
    rationals or graded base-ring elements.
    """
    if f.nvars != nvars:
        raise ValueError("variable count mismatch")
    g = vandermonde(nvars) * f
    total = _ZERO
    for exps, coeff in g.terms.items():
        scale = _ONE
        for e in exps:
            scale *= inv_factorial(e)
            if not scale:
                break
        if scale:
            total = total + coeff * scale
    return total


def phi_eval_monomial(k) -> Fraction:
    """Closed form of phi on the monomial prod t_i^{k_i}:
    (-1)^(d(d-1)/2) * prod_{i<j}(k_i - k_j) / prod (k_i + d - 1)!."""
    k = tuple(k)
    d = len(k)
    if any(x < 0 for x in k):
        raise ValueError("exponents must be nonnegative")
    num = 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= k[i] - k[j]
    if num == 0:
        return _ZERO
    den = 1
    for x in k:
        den *= factorial(x + d - 1)
    value = Fraction(num, den)
    if (d * (d - 1) // 2) % 2:
        value = -value
    return value


def factorial_det_check(x) -> bool:
    """Check det[1/(x_i + j)!] = prod_{i<j}(x_i - x_j) / prod (x_i + d-1)!
    exactly, for nonnegative integers x_i."""
    x = tuple(x)
    d = len(x)
    if any(v < 0 for v in x):
        raise ValueError("entries must be nonnegative")
    matrix = [[inv_factorial(x[i] + j) for j in range(d)] for i in range(d)]
    lhs = det(matrix)
    num = 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= x[i] - x[j]
    den = 1
    for v in x:
        den *= factorial(v + d - 1)
    return lhs == Fraction(num, den)


def _as_element(base, value) -> GradedElement:
    if isinstance(value, GradedElement):
        return value
    return base.scalar(value)


def monomial_pushforward_ct(p, bundle, d: int) -> GradedElement:
    """Push-forward of the flag-ring monomial prod x_i^{p_i} by the
    Laurent constant-term formula:
    const( Delta(t) prod t_i^{-p_i + r - d} s(E, t_i) )."""
    p = tuple(p)
    if len(p) != d or any(e < 0 for e in p):
        raise ValueError("need d nonnegative exponents")
    r = bundle.rank
    f = LaurentPoly.constant(d, bundle.base.one())
    for i in range(d):
        f = f * segre_series_poly(bundle, d, i, shift=-p[i] + r - d)
    return _as_element(bundle.base, const_of_product(vandermonde(d), f))


def monomial_pushforward_det(p, bundle, d: int) -> GradedElement:
    """Same push-forward by the determinantal formula
    det[ s_{p_i + j - r + 1}(E) ]."""
    p = tuple(p)
    if len(p) != d or any(e < 0 for e in p):
        raise ValueError("need d nonnegative exponents")
    r = bundle.rank
    matrix = [
        [bundle.segre_class(p[i] + j - r + 1) for j in range(d)] for i in range(d)
    ]
    return det(matrix)


def pushforward_polynomial(F: LaurentPoly, bundle, d: int) -> GradedElement:
    """Push-forward of F(x_0, ..., x_{d-1}) for a genuine polynomial F
    with base-ring (or rational) coefficients:
    const( Delta(t) prod t_i^{r-d} F(1/t) prod s(E, t_i) )."""
    if F.nvars != d:
        raise ValueError("variable count mismatch")
    if any(e < 0 for exps in F.terms for e in exps):
        raise ValueError("F must be a polynomial, found a negative exponent")
    r = bundle.rank
    f = F.invert_variables()
    for i in range(d):
        f = f * segre_series_poly(bundle, d, i, shift=r - d)
    return _as_element(bundle.base, const_of_product(vandermonde(d), f))


class PushforwardSeries:
    """Graded components of the pushed-forward Chern character.

    Component m is the degree-m part in the base ring; the push-forward
    of theta^N is recovered as N! times component N - d(r-d)."""

    __slots__ = ("bundle", "d", "method", "components")

    def __init__(self, bundle, d, method, components):
        self.bundle = bundle
        self.d = d
        self.method = method
        self.components = dict(components)

    @property
    def relative_dimension(self) -> int:
        return self.d * (self.bundle.rank - self.d)

    def component(self, m: int) -> GradedElement:
        value = self.components.get(m)
        return value if value is not None else self.bundle.base.zero()

    def theta_power(self, N: int) -> GradedElement:
        """Push-forward of theta^N (zero below the relative dimension)."""
        m = N - self.relative_dimension
        if m < 0 or m > self.bundle.base.n:
            return self.bundle.base.zero()
        return self.component(m) * Fraction(factorial(N))

    def same_components(self, other: "PushforwardSeries") -> bool:
        degrees = set(self.components) | set(other.components)
        return all(self.component(m) == other.component(m) for m in degrees)

    def __repr__(self):
        rows = ", ".join(
            f"[{m}] {self.component(m)!r}" for m in sorted(self.components)
        )
        return f"<pushforward ch by {self.method}: {rows}>"


def _compositions_up_to(length: int, total: int):
    if length == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions_up_to(length - 1, total - first):
            yield (first,) + rest


def closed_term_coefficient(k, r: int, denominator: str = PROOF) -> Fraction:
    """The rational weight of prod s_{k_i}(E) in the closed formula.

    ``"proof"`` uses factorials (r + k_i - i - 1)!; ``"displayed"`` uses
    (r + k_i - i)!.  The two differ by one inside each factorial and only
    the former reproduces the oracle and the classical degrees: the test
    suite demonstrates the failure of the latter on concrete degrees.
    """
    if denominator not in (PROOF, DISPLAYED):
        raise ValueError(f"unknown denominator variant {denominator!r}")
    k = tuple(k)
    num = 1
    for i in range(len(k)):
        for j in range(i + 1, len(k)):
            num *= k[i] - k[j] - i + j
    if num == 0:
        return _ZERO
    den = 1
    for i, ki in enumerate(k):
        base = r + ki - i - 1 if denominator == PROOF else r + ki - i
        den *= factorial(base)
    return Fraction(num, den)


def ch_pushforward_closed(bundle, d: int, denominator: str = PROOF) -> PushforwardSeries:
    """Closed-sum route: sum over k in Z_{>=0}^d of the factorial weight
    times prod s_{k_i}(E).  Exponents with |k| > n only feed degrees that
    are zero by truncation, so the sum stops at |k| = n."""
    r = bundle.rank
    if not 1 <= d <= r:
        raise ValueError("need 1 <= d <= rank")
    n = bundle.base.n
    comps = {m: bundle.base.zero() for m in range(n + 1)}
    for k in _compositions_up_to(d, n):
        coeff = closed_term_coefficient(k, r, denominator)
        if not coeff:
            continue
        term = bundle.base.one()
        for ki in k:
            term = term * bundle.segre_class(ki)
            if not term:
                break
        if term:
            comps[sum(k)] = comps[sum(k)] + term * coeff
    return PushforwardSeries(bundle, d, "closed", comps)


def ch_pushforward_schur(bundle, d: int) -> PushforwardSeries:
    """Tableau route: sum over partitions lam with at most d parts of
    f^{lam + (r-d)^d} / |lam + (r-d)^d|! times the Schur determinant in
    the Segre classes."""
    r = bundle.rank
    if not 1 <= d <= r:
        raise ValueError("need 1 <= d <= rank")
    n = bundle.base.n
    comps = {m: bundle.base.zero() for m in range(n + 1)}
    for lam in partitions_up_to(d, n):
        mu = tuple(part + (r - d) for part in lam)
        coeff = Fraction(syt_count(mu), factorial(weight(mu)))
        term = schur_delta(lam, bundle)
        if term:
            comps[weight(lam)] = comps[weight(lam)] + term * coeff
    return PushforwardSeries(bundle, d, "schur", comps)


def ch_pushforward_constterm(bundle, d: int) -> PushforwardSeries:
    """Laurent route: the push-forward equals
    const( Delta(t) prod t_i^{r-d-(d-1-i)} exp(sum 1/t_i) prod s(E, t_i) ),
    evaluated by feeding the series part through :func:`phi`."""
    r = bundle.rank
    if not 1 <= d <= r:
        raise ValueError("need 1 <= d <= rank")
    n = bundle.base.n
    f = LaurentPoly.constant(d, bundle.base.one())
    for i in range(d):
        f = f * segre_series_poly(bundle, d, i, shift=r - d - (d - 1 - i))
    value = _as_element(bundle.base, phi(f, d))
    comps = {m: value.component(m) for m in range(n + 1)}
    return PushforwardSeries(bundle, d, "constterm", comps)


def ch_pushforward_oracle(bundle, d: int) -> PushforwardSeries:
    """Oracle route: push theta powers forward in the flag ring and divide
    by N!.  Independent of all three formula routes."""
    ring = FlagRing(bundle, d)
    rel = d * (bundle.rank - d)
    n = bundle.base.n
    comps = {
        m: ring.pushforward_theta_power(rel + m) * inv_factorial(rel + m)
        for m in range(n + 1)
    }
    return PushforwardSeries(bundle, d, "oracle", comps)


ALL_METHODS = ("closed", "schur", "constterm", "oracle")


def ch_pushforward(bundle, d: int, method: str, denominator: str = PROOF) -> PushforwardSeries:
    """Dispatch a single route by name."""
    if method == "closed":
        return ch_pushforward_closed(bundle, d, denominator)
    if method == "schur":
        return ch_pushforward_schur(bundle, d)
    if method == "constterm":
        return ch_pushforward_constterm(bundle, d)
    if method == "oracle":
        return ch_pushforward_oracle(bundle, d)
    raise ValueError(f"unknown method {method!r}")
