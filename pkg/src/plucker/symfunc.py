"""Partitions, standard Young tableaux, Schur polynomials and the
antisymmetrizer identities.

Partitions are plain tuples of weakly decreasing nonnegative integers;
trailing zeros are allowed and never change a count.  Tableau counts come
from the factorial/Vandermonde closed form, with honest enumeration kept
around as a test oracle.  The antisymmetrizers here are the unnormalized
ones, A(f) = sum over permutations of sgn * permuted f, so repeated
application scales by the factorial of the block size.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from math import factorial

from .exact import LaurentPoly, det, perm_sign, vandermonde

_ZERO = Fraction(0)
_ONE = Fraction(1)


def is_partition(mu) -> bool:
    return all(a >= b for a, b in zip(mu, mu[1:])) and all(a >= 0 for a in mu)


def weight(mu) -> int:
    return sum(mu)


def partitions_of(m: int, parts: int):
    """All partitions of m into exactly ``parts`` parts (zeros allowed),
    in descending lexicographic order."""
    if parts == 0:
        if m == 0:
            yield ()
        return
    yield from _descend(m, parts, m)


def _descend(m, parts, cap):
    if parts == 1:
        if m <= cap:
            yield (m,)
        return
    for first in range(min(m, cap), -1, -1):
        if first * parts < m:
            break
        for rest in _descend(m - first, parts - 1, first):
            yield (first,) + rest


def partitions_up_to(parts: int, max_weight: int):
    """Every partition with at most ``parts`` parts and weight at most
    ``max_weight``, as tuples of length exactly ``parts``, each once."""
    if parts < 1:
        raise ValueError("need at least one part slot")
    if max_weight < 0:
        return
    for m in range(max_weight + 1):
        yield from partitions_of(m, parts)


def syt_count(mu) -> int:
    """Number of standard Young tableaux of shape mu.

    Uses the bialternant form: with l_i = mu_i + d - i (1-indexed), the
    count is |mu|! * prod_{i<j} (l_i - l_j) / prod_i l_i!.  The empty
    shape counts 1.
    """
    mu = tuple(mu)
    if not is_partition(mu):
        raise ValueError(f"{mu} is not a partition")
    w = weight(mu)
    if w == 0:
        return 1
    d = len(mu)
    ls = [mu[i] + d - 1 - i for i in range(d)]
    num = factorial(w)
    for i in range(d):
        for j in range(i + 1, d):
            num *= ls[i] - ls[j]
    den = 1
    for l in ls:
        den *= factorial(l)
    count = Fraction(num, den)
    if count.denominator != 1:
        raise AssertionError(f"tableau count for {mu} is not an integer: {count}")
    return int(count)


def standard_tableaux(mu):
    """Yield every standard Young tableau of shape mu, as a tuple of row
    tuples filled with 1..|mu|.  Enumeration oracle for syt_count."""
    mu = tuple(p for p in mu if p)
    if not is_partition(mu):
        raise ValueError(f"{mu} is not a partition")
    w = weight(mu)
    rows = [[] for _ in mu]
    lengths = [0] * len(mu)

    def place(value):
        if value > w:
            yield tuple(tuple(row) for row in rows)
            return
        for i in range(len(mu)):
            if lengths[i] >= mu[i]:
                continue
            if i > 0 and lengths[i] >= lengths[i - 1]:
                continue
            rows[i].append(value)
            lengths[i] += 1
            yield from place(value + 1)
            rows[i].pop()
            lengths[i] -= 1

    if w == 0:
        yield ()
        return
    yield from place(1)


def schur_in_t(lam, nvars: int) -> LaurentPoly:
    """Schur polynomial s_lam(t_0..t_{nvars-1}) by exact bialternant
    division; the zero-remainder assertion doubles as a self-check."""
    lam = tuple(lam)
    if len(lam) > nvars:
        if any(lam[nvars:]):
            return LaurentPoly.zero(nvars)
        lam = lam[:nvars]
    lam = lam + (0,) * (nvars - len(lam))
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    matrix = []
    for i in range(1, nvars + 1):
        power = lam[i - 1] + nvars - i
        matrix.append(
            [
                LaurentPoly.monomial(nvars, tuple(power if k == j else 0 for k in range(nvars)))
                for j in range(nvars)
            ]
        )
    numerator = det(matrix)
    return numerator.divexact(vandermonde(nvars))


def schur_delta(lam, bundle):
    """Schur polynomial in the Segre classes of a bundle: the
    determinant det[s_{lam_i + j - i}] over the length of lam."""
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    if not lam:
        return bundle.base.one()
    d = len(lam)
    matrix = [
        [bundle.segre_class(lam[i] + (j + 1) - (i + 1)) for j in range(d)]
        for i in range(d)
    ]
    return det(matrix)


def segre_series_poly(bundle, nvars: int, var: int, shift: int = 0) -> LaurentPoly:
    """The Segre series of a bundle in variable ``var`` times t_var^shift,
    truncated at the base dimension."""
    terms = {}
    for m in range(bundle.base.n + 1):
        s = bundle.segre_class(m)
        if s:
            exps = [0] * nvars
            exps[var] = shift + m
            terms[tuple(exps)] = s
    return LaurentPoly(nvars, terms)


def cauchy_product_sides(bundle, nvars: int, max_t_degree: int):
    """Both sides of the Cauchy expansion of prod_i s(E, t_i), truncated
    to total t-degree <= max_t_degree."""
    lhs = LaurentPoly.constant(nvars, bundle.base.one())
    for i in range(nvars):
        lhs = lhs * segre_series_poly(bundle, nvars, i)
    lhs = lhs.truncate_total_degree(max_t_degree)
    rhs = LaurentPoly.zero(nvars)
    for lam in partitions_up_to(nvars, max_t_degree):
        coeff = schur_delta(lam, bundle)
        if coeff:
            rhs = rhs + schur_in_t(lam, nvars) * coeff
    return lhs, rhs.truncate_total_degree(max_t_degree)


def cauchy_expand_check(bundle, nvars: int, max_t_degree: int) -> bool:
    """Check prod_i s(E, t_i) = sum over partitions of
    schur_delta(lam, E) * s_lam(t), truncated by t-degree."""
    lhs, rhs = cauchy_product_sides(bundle, nvars, max_t_degree)
    return lhs == rhs


def cauchy_mismatch_witness(bundle, nvars: int, max_t_degree: int):
    """None when the Cauchy expansion holds, else one offending monomial."""
    lhs, rhs = cauchy_product_sides(bundle, nvars, max_t_degree)
    diff = lhs - rhs
    if not diff:
        return None
    return min(diff.terms)


def antisymmetrize(f: LaurentPoly, block) -> LaurentPoly:
    """Signed symmetrization of f over permutations of the given variable
    indices (other variables stay put)."""
    block = list(block)
    if len(set(block)) != len(block) or any(
        not 0 <= i < f.nvars for i in block
    ):
        raise ValueError(f"invalid variable block {block}")
    result = LaurentPoly.zero(f.nvars)
    for perm in permutations(range(len(block))):
        mapping = list(range(f.nvars))
        for pos, p in enumerate(perm):
            mapping[block[pos]] = block[p]
        image = f.permute_variables(mapping)
        if perm_sign(perm) < 0:
            image = -image
        result = result + image
    return result


def _vandermonde_at(values):
    acc = _ONE
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            acc *= values[i] - values[j]
    return acc


def _random_fraction(rng, height):
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def gen_cauchy_check(r: int, d: int, trials: int = 100, seed: int = 0,
                     height: int = 20) -> bool:
    """Verify the generalized Cauchy determinant identity at random
    rational points, in both the tau form and the t = 1/tau form.

    With the unnormalized antisymmetrizer the correct right-hand side
    carries the combinatorial factor d! (r-d)!; see the identity notes in
    the README.  Degenerate samples (coinciding points, vanishing
    denominators) are resampled, never evaluated; equality is exact.
    """
    if not 1 <= d <= r:
        raise ValueError("need 1 <= d <= r")
    if r > 6:
        raise ValueError("r is capped at 6: the antisymmetrizer sums r! terms")
    rng = random.Random(seed)
    scale = Fraction(factorial(d) * factorial(r - d))
    perms = [(perm_sign(p), p) for p in permutations(range(r))]
    for _ in range(trials):
        xs, taus = _sample_tau_point(rng, r, d, height)
        lhs = _ZERO
        for sign, perm in perms:
            vals = [xs[perm[i]] for i in range(r)]
            num = _vandermonde_at(vals[:d]) * _vandermonde_at(vals[d:])
            if num:
                den = _ONE
                for tau in taus:
                    for x in vals[:d]:
                        den *= tau - x
                lhs += sign * num / den
        den_all = _ONE
        for tau in taus:
            for x in xs:
                den_all *= tau - x
        if lhs != scale * _vandermonde_at(xs) / den_all:
            return False

        xs, ts = _sample_t_point(rng, r, d, height)
        lhs = _ZERO
        for sign, perm in perms:
            vals = [xs[perm[i]] for i in range(r)]
            num = _vandermonde_at(vals[:d]) * _vandermonde_at(vals[d:])
            if num:
                den = _ONE
                for t in ts:
                    for x in vals[:d]:
                        den *= 1 - x * t
                lhs += sign * num / den
        den_all = _ONE
        tpow = _ONE
        for t in ts:
            tpow *= t ** (r - d)
            for x in xs:
                den_all *= 1 - x * t
        if lhs != scale * _vandermonde_at(xs) * tpow / den_all:
            return False
    return True


def _sample_tau_point(rng, r, d, height):
    while True:
        xs = [_random_fraction(rng, height) for _ in range(r)]
        taus = [_random_fraction(rng, height) for _ in range(d)]
        if len(set(xs)) != r:
            continue
        if any(tau == x for tau in taus for x in xs):
            continue
        return xs, taus


def _sample_t_point(rng, r, d, height):
    while True:
        xs = [_random_fraction(rng, height) for _ in range(r)]
        ts = [_random_fraction(rng, height) for _ in range(d)]
        if len(set(xs)) != r:
            continue
        if any(x * t == 1 for t in ts for x in xs):
            continue
        return xs, ts
