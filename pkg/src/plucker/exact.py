"""Exact scalars and sparse multivariate Laurent polynomials.

Scalars are arbitrary-precision rationals (``fractions.Fraction``), and
polynomial coefficients may live in any commutative ring whose elements
support ``+``, ``-``, ``*`` and truth testing.  Zero coefficients are
pruned after every operation, so equality of polynomials is structural
equality of their term maps.  Nothing in this module (or this package)
ever rounds: floating point is banned end to end.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from operator import add as _add

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def inv_factorial(m: int) -> Fraction:
    """1/m! for m >= 0, extended by 0 for negative m."""
    if m < 0:
        return _ZERO
    return Fraction(1, factorial(m))


def perm_sign(perm) -> int:
    """Sign of a permutation given as a sequence of distinct integers."""
    sign = 1
    seen = [False] * len(perm)
    order = sorted(range(len(perm)), key=lambda i: perm[i])
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _tadd(a, b):
    return tuple(map(_add, a, b))


class LaurentPoly:
    """Finitely supported Laurent polynomial in a fixed set of variables.

    Terms are a sparse map from integer exponent vectors (negative entries
    allowed) to nonzero coefficients.  Instances are immutable by
    convention: no method mutates ``self``.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(
                        f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                    )
                if coeff:
                    clean[exps] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, nvars: int, exps, coeff=_ONE) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "LaurentPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): _ONE})

    def coeff(self, exps):
        return self.terms.get(tuple(exps), _ZERO)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts: %d vs %d" % (self.nvars, other.nvars))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, _ZERO) + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        res = LaurentPoly(self.nvars)
        res.terms = out
        return res

    def __neg__(self):
        res = LaurentPoly(self.nvars)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            # ring-element or rational scalar
            res = LaurentPoly(self.nvars)
            if other:
                res.terms = {e: c * other for e, c in self.terms.items() if c * other}
            return res
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                prod = c1 * c2
                if not prod:
                    continue
                key = _tadd(e1, e2)
                acc = out.get(key, _ZERO) + prod
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        res = LaurentPoly(self.nvars)
        res.terms = out
        return res

    def __rmul__(self, other):
        res = LaurentPoly(self.nvars)
        if other:
            res.terms = {e: other * c for e, c in self.terms.items() if other * c}
        return res

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = LaurentPoly.constant(self.nvars, _ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def map_coeffs(self, fn) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def invert_variables(self) -> "LaurentPoly":
        """Substitute t_i -> 1/t_i for every variable."""
        res = LaurentPoly(self.nvars)
        res.terms = {tuple(-x for x in e): c for e, c in self.terms.items()}
        return res

    def permute_variables(self, perm) -> "LaurentPoly":
        """Apply t_i -> t_{perm[i]}; ``perm`` must be a permutation of 0..nvars-1."""
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                new[perm[i]] = e
            key = tuple(new)
            acc = out.get(key, _ZERO) + coeff
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        res = LaurentPoly(self.nvars)
        res.terms = out
        return res

    def truncate_total_degree(self, bound: int) -> "LaurentPoly":
        res = LaurentPoly(self.nvars)
        res.terms = {e: c for e, c in self.terms.items() if sum(e) <= bound}
        return res

    def divexact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division of polynomials with rational coefficients.

        Both operands must have nonnegative exponents.  Raises ValueError
        if the division leaves a remainder; callers rely on that as a
        self-check.
        """
        self._check(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        for poly in (self, divisor):
            if any(x < 0 for e in poly.terms for x in e):
                raise ValueError("divexact requires polynomial (nonnegative) exponents")
        lead = max(divisor.terms)
        lead_coeff = divisor.terms[lead]
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem)
            c = rem.pop(m)
            q = tuple(a - b for a, b in zip(m, lead))
            if any(x < 0 for x in q):
                raise ValueError("division is not exact (leftover monomial %r)" % (m,))
            qc = c / lead_coeff
            quot[q] = quot.get(q, _ZERO) + qc
            for e, dc in divisor.terms.items():
                if e == lead:
                    continue  # canceled exactly by the pop above
                key = _tadd(q, e)
                acc = rem.get(key, _ZERO) - qc * dc
                if acc:
                    rem[key] = acc
                else:
                    rem.pop(key, None)
        return LaurentPoly(self.nvars, quot)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            coeff = self.terms[exps]
            mono = "*".join(
                f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in enumerate(exps) if e
            )
            if not mono:
                bits.append(str(coeff))
            elif coeff == 1:
                bits.append(mono)
            elif coeff == -1:
                bits.append("-" + mono)
            else:
                bits.append(f"{coeff}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")


def const_term(f: LaurentPoly):
    """Coefficient of the all-zero exponent vector (0 if absent)."""
    return f.terms.get((0,) * f.nvars, _ZERO)


def const_of_product(a: LaurentPoly, b: LaurentPoly):
    """Constant term of a * b, as a pairing of opposite monomials.

    Equals const_term(a * b) but never materializes the product; the
    factor with fewer terms drives the loop.
    """
    a._check(b)
    if len(b.terms) < len(a.terms):
        a, b = b, a
    total = _ZERO
    for exps, coeff in a.terms.items():
        mate = b.terms.get(tuple(-x for x in exps))
        if mate is not None:
            total = total + coeff * mate
    return total


@lru_cache(maxsize=None)
def vandermonde(nvars: int) -> LaurentPoly:
    """The product of (t_i - t_j) over i < j; 1 for a single variable.

    Cached: instances are immutable by convention, so sharing is safe.
    """
    if nvars < 1:
        raise ValueError("need at least one variable")
    result = LaurentPoly.constant(nvars, _ONE)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            result = result * (
                LaurentPoly.variable(nvars, i) - LaurentPoly.variable(nvars, j)
            )
    return result


def det(rows):
    """Determinant of a square matrix over a commutative ring.

    Cofactor expansion for small matrices, subset dynamic programming for
    the rest.  Both are division free, so entries may come from rings with
    zero divisors (truncated graded rings, Laurent polynomials, ...).
    """
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValueError("matrix must be square and nonempty")
    rows = [list(row) for row in rows]
    if n <= 4:
        return _det_cofactor(rows)
    return _det_subsets(rows)


def _det_cofactor(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        pivot = rows[0][j]
        if not pivot:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = pivot * _det_cofactor(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        # the first row is identically zero
        return rows[0][0]
    return acc


def _det_subsets(rows):
    n = len(rows)
    state = {}
    for j, entry in enumerate(rows[0]):
        if entry:
            state[1 << j] = entry
    for i in range(1, n):
        nxt = {}
        for mask, value in state.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = rows[i][j]
                if not entry:
                    continue
                below = bin(mask & (bit - 1)).count("1")
                term = value * entry
                if (i + below) % 2:
                    term = -term
                key = mask | bit
                if key in nxt:
                    acc = nxt[key] + term
                    if acc:
                        nxt[key] = acc
                    else:
                        del nxt[key]
                else:
                    nxt[key] = term
        state = nxt
    full = (1 << n) - 1
    if full in state:
        return state[full]
    return rows[0][0] - rows[0][0]  # zero of the entry ring
