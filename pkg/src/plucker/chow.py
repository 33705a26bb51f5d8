"""Truncated rational Chow-ring models, bundle class data, and the
flag-bundle quotient ring.

Three base models are supported:

* ``point()`` is the rational numbers in degree 0,
* ``projective_space(n)`` is Q[h]/(h^(n+1)) with h the hyperplane class,
* ``formal_segre(n, families)`` is a polynomial ring on free graded
  generators s_1, ..., s_n (one batch per family, deg s_i = i) truncated
  above total degree n.  An identity verified there holds for every base
  of dimension at most n, because the generators carry no relations.

On top of a base model, :class:`BundleModel` records the rank and the
Segre classes of a vector bundle, and :class:`FlagRing` realizes the
Chow ring of its flag bundle as a free module over the base with the
monomial basis x_0^{i_0} ... x_{d-1}^{i_{d-1}}, 0 <= i_l <= rank-l-1.
Push-forward to the base is coefficient extraction on the top basis
monomial, which is what makes the flag ring a brute-force oracle for
every closed formula in this package.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .exact import LaurentPoly, _tadd

_ZERO = Fraction(0)
_ONE = Fraction(1)

POINT = "point"
PROJECTIVE = "projective"
FORMAL = "formal"

_FAMILY_PREFIXES = ("s", "u", "v", "w")


class BaseModel:
    """A truncated graded ring standing in for the rational Chow ring of
    the base variety.  Immutable after construction (the degree memo is
    an idempotent cache, safe under concurrent readers)."""

    __slots__ = ("kind", "n", "families", "gen_names", "gen_degrees", "_deg_memo")

    def __init__(self, kind, n, families, gen_names, gen_degrees):
        self.kind = kind
        self.n = n
        self.families = families
        self.gen_names = tuple(gen_names)
        self.gen_degrees = tuple(gen_degrees)
        self._deg_memo = {}

    def __eq__(self, other):
        return (
            isinstance(other, BaseModel)
            and self.kind == other.kind
            and self.n == other.n
            and self.families == other.families
        )

    def __hash__(self):
        return hash((self.kind, self.n, self.families))

    def __repr__(self):
        if self.kind == POINT:
            return "point"
        if self.kind == PROJECTIVE:
            return f"P{self.n}"
        return f"formal(n={self.n}, families={self.families})"

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def one(self) -> "GradedElement":
        return self.scalar(_ONE)

    def scalar(self, value) -> "GradedElement":
        value = Fraction(value)
        if not value:
            return GradedElement(self, {})
        return GradedElement(self, {(0,) * len(self.gen_names): value})

    def generator(self, index: int) -> "GradedElement":
        exps = [0] * len(self.gen_names)
        exps[index] = 1
        return GradedElement(self, {tuple(exps): _ONE})

    def hyperplane(self) -> "GradedElement":
        if self.kind != PROJECTIVE:
            raise ValueError("hyperplane class only exists on a projective-space model")
        return self.generator(0)

    def segre_generator(self, i: int, family: int = 0) -> "GradedElement":
        """The free degree-i generator of the given family (1 <= i <= n)."""
        if self.kind != FORMAL:
            raise ValueError("free Segre generators only exist on a formal model")
        if not 1 <= i <= self.n:
            raise ValueError(f"generator degree {i} out of range 1..{self.n}")
        if not 0 <= family < self.families:
            raise ValueError(f"family {family} out of range")
        return self.generator(family * self.n + (i - 1))

    def _degree(self, exps) -> int:
        memo = self._deg_memo
        deg = memo.get(exps)
        if deg is None:
            deg = sum(e * w for e, w in zip(exps, self.gen_degrees))
            memo[exps] = deg
        return deg


def point() -> BaseModel:
    return BaseModel(POINT, 0, 0, (), ())


def projective_space(n: int) -> BaseModel:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    if n == 0:
        return point()
    return BaseModel(PROJECTIVE, n, 0, ("h",), (1,))


def formal_segre(n: int = 3, families: int = 1) -> BaseModel:
    if n < 0:
        raise ValueError("truncation degree must be nonnegative")
    if families < 1:
        raise ValueError("need at least one generator family")
    names = []
    degrees = []
    for f in range(families):
        prefix = (
            _FAMILY_PREFIXES[f] if f < len(_FAMILY_PREFIXES) else f"g{f}_"
        )
        for i in range(1, n + 1):
            names.append(f"{prefix}{i}")
            degrees.append(i)
    return BaseModel(FORMAL, n, families, names, degrees)


class GradedElement:
    """Element of a truncated graded base ring, sparse over monomials in
    the model generators.  Components above the truncation degree are
    dropped on construction and during multiplication."""

    __slots__ = ("model", "terms")

    def __init__(self, model: BaseModel, terms=None):
        self.model = model
        clean = {}
        if terms:
            n = model.n
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if coeff and model._degree(exps) <= n:
                    clean[exps] = coeff
        self.terms = clean

    def _coerce(self, other):
        if isinstance(other, GradedElement):
            if other.model != self.model:
                raise ValueError("elements live over different base models")
            return other
        if isinstance(other, (int, Fraction)):
            return self.model.scalar(other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        return self.terms == peer.terms

    __hash__ = None

    def __add__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in peer.terms.items():
            acc = out.get(exps, _ZERO) + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        res = GradedElement(self.model)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = GradedElement(self.model)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        return self + (-peer)

    def __rsub__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        return peer + (-self)

    def __mul__(self, other):
        if not isinstance(other, GradedElement):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return self.model.zero()
                res = GradedElement(self.model)
                res.terms = {e: c * other for e, c in self.terms.items()}
                return res
            return NotImplemented
        if other.model != self.model:
            raise ValueError("elements live over different base models")
        model = self.model
        bound = model.n
        out = {}
        deg = model._degree
        rhs = [(e2, deg(e2), c2) for e2, c2 in other.terms.items()]
        for e1, c1 in self.terms.items():
            d1 = deg(e1)
            for e2, d2, c2 in rhs:
                if d1 + d2 > bound:
                    continue
                key = _tadd(e1, e2)
                acc = out.get(key, _ZERO) + c1 * c2
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        res = GradedElement(model)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.model.one()
        for _ in range(k):
            result = result * self
        return result

    def component(self, m: int) -> "GradedElement":
        """The homogeneous degree-m part."""
        deg = self.model._degree
        res = GradedElement(self.model)
        res.terms = {e: c for e, c in self.terms.items() if deg(e) == m}
        return res

    def degrees(self):
        deg = self.model._degree
        return sorted({deg(e) for e in self.terms})

    def homogeneous_degree(self):
        """The single degree of a homogeneous element, None for 0, raises otherwise."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"element is inhomogeneous (degrees {ds})")
        return ds[0]

    def __repr__(self):
        if not self.terms:
            return "0"
        model = self.model
        bits = []
        order = lambda e: (model._degree(e), tuple(-x for x in e))
        for exps in sorted(self.terms, key=order):
            coeff = self.terms[exps]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(model.gen_names, exps)
                if e
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


def integrate(a: GradedElement) -> Fraction:
    """Degree map: the rational coefficient of the top class.

    On a point this is the degree-0 coefficient, on P^n the coefficient
    of h^n.  The formal model has no degree map.
    """
    model = a.model
    if model.kind == FORMAL:
        raise ValueError("integration undefined on formal model")
    if model.kind == POINT:
        return a.terms.get((), _ZERO)
    return a.terms.get((model.n,), _ZERO)


def _invert_unit_series(coeffs, n):
    """Multiplicative inverse of a power series with constant term 1,
    as lists of GradedElement coefficients, modulo degree n+1."""
    model = coeffs[0].model
    inv = [model.one()]
    for m in range(1, n + 1):
        acc = model.zero()
        for i in range(1, min(m, len(coeffs) - 1) + 1):
            acc = acc + coeffs[i] * inv[m - i]
        inv.append(-acc)
    return inv


def segre_from_chern(chern, rank: int, n: int):
    """Segre classes s_0..s_n from Chern classes, via s(t) c(-t) = 1."""
    if not chern or chern[0] != 1:
        raise ValueError("chern[0] must be 1")
    if len(chern) > rank + 1:
        raise ValueError(f"got {len(chern) - 1} Chern classes for rank {rank}")
    model = chern[0].model
    signed = [c if i % 2 == 0 else -c for i, c in enumerate(chern)]
    while len(signed) <= n:
        signed.append(model.zero())
    return _invert_unit_series(signed, n)


def chern_from_segre(segre, n: int):
    """Chern classes c_0..c_n from Segre classes (inverse of the above)."""
    if not segre or segre[0] != 1:
        raise ValueError("segre[0] must be 1")
    signed = _invert_unit_series(list(segre), n)
    return [c if i % 2 == 0 else -c for i, c in enumerate(signed)]


class BundleModel:
    """A vector bundle presented by rank and Segre classes.

    ``segre`` holds s_0..s_n; ``chern`` holds c_0..c_rank (entries beyond
    the truncation degree are zero).  The two determine each other through
    s(t) c(-t) = 1, and rank consistency (c_i = 0 for i > rank) is
    enforced, since every formula here silently assumes it.
    """

    __slots__ = ("base", "rank", "segre", "chern", "chern_roots", "label")

    def __init__(self, base, rank, segre, chern, chern_roots=None, label=None):
        self.base = base
        self.rank = rank
        self.segre = tuple(segre)
        self.chern = tuple(chern)
        self.chern_roots = tuple(chern_roots) if chern_roots is not None else None
        self.label = label or f"rank-{rank} bundle over {base!r}"

    @classmethod
    def from_segre(cls, base, rank, segre, label=None):
        if rank < 1:
            raise ValueError("rank must be positive")
        segre = list(segre)
        if len(segre) != base.n + 1:
            raise ValueError(f"need s_0..s_{base.n}, got {len(segre)} classes")
        if segre[0] != 1:
            raise ValueError("s_0 must be 1")
        for i, s in enumerate(segre):
            if s and s.homogeneous_degree() not in (None, i):
                raise ValueError(f"s_{i} is not homogeneous of degree {i}")
        chern = chern_from_segre(segre, base.n)
        for i in range(rank + 1, base.n + 1):
            if chern[i]:
                raise ValueError(
                    f"Segre classes are inconsistent with rank {rank}: "
                    f"derived c_{i} = {chern[i]!r} is nonzero"
                )
        chern = chern[: rank + 1] + [base.zero()] * max(0, rank - base.n)
        return cls(base, rank, segre, chern[: rank + 1], label=label)

    @classmethod
    def from_chern(cls, base, rank, chern, label=None):
        if rank < 1:
            raise ValueError("rank must be positive")
        chern = list(chern)
        for i, c in enumerate(chern):
            if c and c.homogeneous_degree() not in (None, i):
                raise ValueError(f"c_{i} is not homogeneous of degree {i}")
        segre = segre_from_chern(chern, rank, base.n)
        while len(chern) <= rank:
            chern.append(base.zero())
        chern = [c if i <= base.n else base.zero() for i, c in enumerate(chern)]
        return cls(base, rank, segre, chern, label=label)

    @classmethod
    def from_chern_roots(cls, base, roots, label=None):
        """Split bundle with roots a_j h over a projective-space model
        (or a point, where every root acts as 0)."""
        if base.kind == FORMAL:
            raise ValueError("chern roots require a concrete base model")
        roots = [int(a) for a in roots]
        rank = len(roots)
        if rank < 1:
            raise ValueError("need at least one root")
        h = base.one() if base.kind == POINT else base.hyperplane()
        chern = [base.one()]
        for a in roots:
            if base.kind == POINT:
                factor_cls = [base.one()]
            else:
                factor_cls = [base.one(), h * a]
            new = [base.zero()] * (len(chern) + len(factor_cls) - 1)
            for i, c in enumerate(chern):
                for j, f in enumerate(factor_cls):
                    new[i + j] = new[i + j] + c * f
            chern = new
        chern = chern[: rank + 1]
        out = cls.from_chern(base, rank, chern, label=label)
        return cls(base, rank, out.segre, out.chern, chern_roots=roots, label=out.label)

    @classmethod
    def trivial(cls, base, rank, label=None):
        chern = [base.one()]
        return cls.from_chern(base, rank, chern, label=label or f"trivial rank {rank}")

    @classmethod
    def formal(cls, base, rank, family: int = 0, label=None):
        """Bundle over a formal model whose Segre classes are the free
        generators up to degree min(rank, n); higher ones are forced by
        the rank (a rank-r bundle has c_i = 0 for i > r)."""
        if base.kind != FORMAL:
            raise ValueError("formal bundles need a formal base model")
        if rank < 1:
            raise ValueError("rank must be positive")
        free = [base.one()] + [
            base.segre_generator(i, family) for i in range(1, min(rank, base.n) + 1)
        ]
        if rank >= base.n:
            segre = free
            chern = chern_from_segre(segre, base.n)
            chern = chern + [base.zero()] * (rank + 1 - len(chern))
        else:
            chern = chern_from_segre(free, rank)
            segre = segre_from_chern(chern, rank, base.n)
        return cls(
            base,
            rank,
            segre,
            chern[: rank + 1],
            label=label or f"formal rank {rank} (family {family})",
        )

    def segre_class(self, m: int) -> GradedElement:
        if m < 0 or m > self.base.n:
            return self.base.zero()
        return self.segre[m]

    def chern_class(self, i: int) -> GradedElement:
        if i < 0 or i > self.rank:
            return self.base.zero()
        return self.chern[i]

    def __repr__(self):
        return f"BundleModel({self.label})"


class FlagRing:
    """Chow ring of the corank-1..d flag bundle of a bundle, as a free
    module over the base with basis x_0^{i_0} ... x_{d-1}^{i_{d-1}},
    0 <= i_l <= rank-l-1.

    The reduction rule for x_l^{rank-l} comes from the vanishing of the
    Chern polynomial of the l-th kernel bundle, whose Chern classes are
    obtained by truncated series division; they only involve x_0..x_{l-1},
    so rules are built in increasing l and reduction terminates.  All rule
    tables are precomputed at construction; instances are immutable and
    safe to share.
    """

    __slots__ = (
        "bundle",
        "d",
        "bounds",
        "_rules",
        "_rule_top",
        "_xi_basis",
        "_theta_chain",
        "_lock",
    )

    def __init__(self, bundle: BundleModel, d: int):
        rank = bundle.rank
        if not 1 <= d <= rank:
            raise ValueError(f"corank d={d} must satisfy 1 <= d <= rank={rank}")
        self.bundle = bundle
        self.d = d
        self.bounds = tuple(rank - l - 1 for l in range(d))
        self._rules = {}
        self._rule_top = {}
        self._xi_basis = {}
        # reentrant: cache fills recurse through _normalize
        self._lock = threading.RLock()
        base = bundle.base
        zero_key = (0,) * d
        # Chern classes of the successive kernels, as normal-form term maps.
        kernel = [
            {zero_key: bundle.chern_class(j)} if bundle.chern_class(j) else {}
            for j in range(rank + 1)
        ]
        for l in range(d):
            # rule: x_l^{rank-l} = sum_{j>=1} (-1)^(j+1) c_j(kernel_l) x_l^{rank-l-j}
            rule = {}
            for j in range(1, rank - l + 1):
                cj = kernel[j]
                if not cj:
                    continue
                sign = _ONE if j % 2 == 1 else -_ONE
                for exps, coeff in cj.items():
                    key = list(exps)
                    key[l] += rank - l - j
                    key = tuple(key)
                    acc = rule.get(key, base.zero()) + coeff * sign
                    if acc:
                        rule[key] = acc
                    else:
                        rule.pop(key, None)
            self._rules[(l, rank - l)] = rule
            self._rule_top[l] = rank - l
            if l + 1 < d:
                # divide the Chern series by (1 + x_l t) to reach the next kernel
                nxt = [kernel[0]]
                for j in range(1, rank - l):
                    shifted = self._shift(nxt[j - 1], l)
                    nxt.append(self._normalize(self._sub(kernel[j], shifted)))
                kernel = nxt + [{}] * (l + 2)
        self._theta_chain = None

    # -- term-map helpers ------------------------------------------------

    @staticmethod
    def _shift(terms, l, amount=1):
        out = {}
        for exps, coeff in terms.items():
            key = list(exps)
            key[l] += amount
            out[tuple(key)] = coeff
        return out

    @staticmethod
    def _sub(a, b):
        out = dict(a)
        for exps, coeff in b.items():
            have = out.get(exps)
            acc = -coeff if have is None else have - coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return out

    def _power_rule(self, l, p):
        """Normal form of x_l^p as a term map, for p past the basis bound."""
        got = self._rules.get((l, p))
        if got is not None:
            return got
        with self._lock:
            top = self._rule_top[l]
            while top < p:
                nxt = self._normalize(self._shift(self._rules[(l, top)], l))
                top += 1
                self._rules[(l, top)] = nxt
            self._rule_top[l] = top
        return self._rules[(l, p)]

    def _normalize(self, raw):
        """Rewrite a term map into the free-module basis."""
        bounds = self.bounds
        d = self.d
        out = {}
        stack = list(raw.items())
        while stack:
            exps, coeff = stack.pop()
            if not coeff:
                continue
            excess = -1
            for l in range(d - 1, -1, -1):
                if exps[l] > bounds[l]:
                    excess = l
                    break
            if excess < 0:
                have = out.get(exps)
                acc = coeff if have is None else have + coeff
                if acc:
                    out[exps] = acc
                else:
                    out.pop(exps, None)
                continue
            rule = self._power_rule(excess, exps[excess])
            rest = list(exps)
            rest[excess] = 0
            rest = tuple(rest)
            for rexps, rcoeff in rule.items():
                stack.append((_tadd(rest, rexps), coeff * rcoeff))
        return out

    def _mul_terms(self, a, b):
        # accumulate raw {generator exps: Fraction} slots per flag
        # monomial, wrapping into ring elements only once at the end
        model = self.bundle.base
        bound = model.n
        deg = model._degree
        slots = {}
        for e1, c1 in a.items():
            lhs = [(g1, deg(g1), q1) for g1, q1 in c1.terms.items()]
            for e2, c2 in b.items():
                key = _tadd(e1, e2)
                slot = slots.get(key)
                if slot is None:
                    slot = slots[key] = {}
                for g1, d1, q1 in lhs:
                    for g2, q2 in c2.terms.items():
                        if d1 + deg(g2) > bound:
                            continue
                        gkey = _tadd(g1, g2)
                        acc = slot.get(gkey, _ZERO) + q1 * q2
                        if acc:
                            slot[gkey] = acc
                        else:
                            del slot[gkey]
        raw = {}
        for key, slot in slots.items():
            if slot:
                value = GradedElement(model)
                value.terms = slot
                raw[key] = value
        return self._normalize(raw)

    def _xi_times_basis(self, l, exps):
        """Normal form of (basis monomial exps) * x_l, cached; the staple
        of the theta-power chain."""
        key = (l, exps)
        cached = self._xi_basis.get(key)
        if cached is None:
            with self._lock:
                cached = self._xi_basis.get(key)
                if cached is None:
                    shifted = list(exps)
                    shifted[l] += 1
                    cached = self._normalize({tuple(shifted): self.bundle.base.one()})
                    self._xi_basis[key] = cached
        return cached

    def _monomial_terms(self, exps, coeff):
        """Normal form of coeff * x^exps, applying the cached
        multiply-by-x_l basis maps one generator at a time.  The
        accumulator never leaves the free-module basis, so nothing
        cascades."""
        acc = {(0,) * self.d: coeff}
        for l in range(self.d - 1, -1, -1):
            for _ in range(exps[l]):
                nxt = {}
                for e, c in acc.items():
                    for bexps, bcoeff in self._xi_times_basis(l, e).items():
                        prod = c * bcoeff
                        if not prod:
                            continue
                        have = nxt.get(bexps)
                        total = prod if have is None else have + prod
                        if total:
                            nxt[bexps] = total
                        else:
                            nxt.pop(bexps, None)
                acc = nxt
                if not acc:
                    return acc
        return acc

    # -- public API ------------------------------------------------------

    def zero(self) -> "FlagRingElement":
        return FlagRingElement(self, {})

    def one(self) -> "FlagRingElement":
        return self.scalar(_ONE)

    def scalar(self, value) -> "FlagRingElement":
        if isinstance(value, GradedElement):
            if value.model != self.bundle.base:
                raise ValueError("scalar lives over a different base model")
            coeff = value
        else:
            coeff = self.bundle.base.scalar(value)
        if not coeff:
            return self.zero()
        return FlagRingElement(self, {(0,) * self.d: coeff})

    def xi(self, l: int) -> "FlagRingElement":
        """The hyperplane generator x_l of the l-th projective-bundle step."""
        if not 0 <= l < self.d:
            raise ValueError(f"index {l} out of range 0..{self.d - 1}")
        exps = [0] * self.d
        exps[l] = 1
        raw = {tuple(exps): self.bundle.base.one()}
        return FlagRingElement(self, self._normalize(raw))

    def theta(self) -> "FlagRingElement":
        """Pull-back of the Pluecker class: x_0 + ... + x_{d-1}."""
        acc = self.zero()
        for l in range(self.d):
            acc = acc + self.xi(l)
        return acc

    def from_terms(self, terms) -> "FlagRingElement":
        out = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if any(e < 0 for e in exps):
                raise ValueError("flag-ring monomials need nonnegative exponents")
            if isinstance(coeff, (int, Fraction)):
                coeff = self.bundle.base.scalar(coeff)
            if not coeff:
                continue
            for nexps, ncoeff in self._monomial_terms(exps, coeff).items():
                have = out.get(nexps)
                acc = ncoeff if have is None else have + ncoeff
                if acc:
                    out[nexps] = acc
                else:
                    out.pop(nexps, None)
        return FlagRingElement(self, out)

    def evaluate_poly(self, poly: LaurentPoly) -> "FlagRingElement":
        """Evaluate a polynomial in d variables at (x_0, ..., x_{d-1})."""
        if poly.nvars != self.d:
            raise ValueError("variable count does not match the flag ring")
        return self.from_terms(poly.terms)

    @property
    def top_monomial(self):
        rank = self.bundle.rank
        return tuple(rank - 1 - l for l in range(self.d))

    @property
    def relative_dimension(self) -> int:
        rank = self.bundle.rank
        return sum(rank - l - 1 for l in range(self.d))

    def pushforward_theta_power(self, N: int) -> GradedElement:
        """Push-forward of theta^N from the Grassmann bundle to the base.

        Computed entirely inside the flag ring: multiply the staircase
        monomial prod x_i^{d-1-i} by (sum x_i)^N and read off the top
        basis coefficient.  Partial products are cached per ring.
        """
        if N < 0:
            raise ValueError("power must be nonnegative")
        with self._lock:
            if self._theta_chain is None:
                staircase = tuple(self.d - 1 - i for i in range(self.d))
                seed = {staircase: self.bundle.base.one()}
                self._theta_chain = [self._normalize(seed)]
            chain = self._theta_chain
            while len(chain) <= N:
                prev = chain[-1]
                out = {}
                for exps, coeff in prev.items():
                    for l in range(self.d):
                        for bexps, bcoeff in self._xi_times_basis(l, exps).items():
                            prod = coeff * bcoeff
                            if not prod:
                                continue
                            have = out.get(bexps)
                            acc = prod if have is None else have + prod
                            if acc:
                                out[bexps] = acc
                            else:
                                out.pop(bexps, None)
                chain.append(out)
        top = self.top_monomial
        value = chain[N].get(top)
        return value if value is not None else self.bundle.base.zero()


class FlagRingElement:
    """Normal-form element of a flag ring: a map from in-bounds exponent
    tuples to base-ring coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: FlagRing, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, FlagRingElement):
            if other.ring is not self.ring and (
                other.ring.bundle is not self.ring.bundle or other.ring.d != self.ring.d
            ):
                raise ValueError("elements live in different flag rings")
            return other
        if isinstance(other, (int, Fraction, GradedElement)):
            return self.ring.scalar(other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        return self.terms == peer.terms

    __hash__ = None

    def __add__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in peer.terms.items():
            have = out.get(exps)
            acc = coeff if have is None else have + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return FlagRingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return FlagRingElement(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        return self + (-peer)

    def __rsub__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        return peer + (-self)

    def __mul__(self, other):
        peer = self._coerce(other)
        if peer is None:
            return NotImplemented
        return FlagRingElement(self.ring, self.ring._mul_terms(self.terms, peer.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def coefficient(self, exps) -> GradedElement:
        value = self.terms.get(tuple(exps))
        return value if value is not None else self.ring.bundle.base.zero()

    def pushforward(self) -> GradedElement:
        """Push-forward to the base: the coefficient on the top monomial."""
        return self.coefficient(self.ring.top_monomial)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms):
            mono = "*".join(
                f"x{l}" if e == 1 else f"x{l}^{e}" for l, e in enumerate(exps) if e
            )
            coeff = self.terms[exps]
            text = repr(coeff)
            if len(coeff.terms) > 1 and mono:
                text = f"({text})"
            bits.append(f"{text}*{mono}" if mono else text)
        return " + ".join(bits)
