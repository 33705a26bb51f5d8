"""Verification grids: the four-way agreement suite and the identity
suites, shared by the test suite and the ``verify`` / ``identity-check``
commands.

Every check is exact (tolerance zero).  Cases are independent and run
concurrently; each builds its own flag ring, so nothing is shared
between workers, and results are ordered by case key for reproducible
output.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .chow import BundleModel, FlagRing, formal_segre, point, projective_space
from .degree import fiber_degree_hook, plucker_degree
from .exact import LaurentPoly, perm_sign
from .pushforward import (
    DISPLAYED,
    PROOF,
    ch_pushforward_closed,
    ch_pushforward_constterm,
    ch_pushforward_oracle,
    ch_pushforward_schur,
    factorial_det_check,
    monomial_pushforward_ct,
    monomial_pushforward_det,
    phi,
    phi_eval_monomial,
)
from .symfunc import cauchy_mismatch_witness, gen_cauchy_check, partitions_up_to, schur_in_t

DEFAULT_MAX_RANK = 6
DEFAULT_TRUNCATION = 3


@dataclass(frozen=True)
class CaseResult:
    key: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        tail = f"  ({self.detail})" if self.detail and not self.ok else ""
        return f"[{mark}] {self.key}{tail}"


def split_bundles(rank: int):
    """Three fixed split bundles of a given rank over projective spaces,
    chosen to exercise mixed dimensions and root signs."""
    first = BundleModel.from_chern_roots(
        projective_space(1), [1] * rank, label=f"O(1)^{rank} over P1"
    )
    roots2 = ([2, 1] + [0] * (rank - 2))[:rank]
    second = BundleModel.from_chern_roots(
        projective_space(2), roots2, label=f"O{tuple(roots2)} over P2"
    )
    pos = (rank + 1) // 2
    roots3 = [1] * pos + [-1] * (rank - pos)
    third = BundleModel.from_chern_roots(
        projective_space(3), roots3, label=f"O{tuple(roots3)} over P3"
    )
    return [first, second, third]


def grid_bundles(rank: int, truncation: int = DEFAULT_TRUNCATION):
    """The agreement-grid models for one rank: the formal bundle plus the
    three fixed split bundles."""
    formal = BundleModel.formal(
        formal_segre(truncation), rank, label=f"formal rank {rank} (n={truncation})"
    )
    return [formal] + split_bundles(rank)


def check_fourway(bundle, d: int) -> CaseResult:
    """One agreement-grid case: the three formula routes and the oracle
    must agree componentwise, theta powers must vanish below the relative
    dimension, and every component must be homogeneous."""
    key = f"agreement r={bundle.rank} d={d} {bundle.label}"
    closed = ch_pushforward_closed(bundle, d, PROOF)
    schur = ch_pushforward_schur(bundle, d)
    constterm = ch_pushforward_constterm(bundle, d)
    oracle = ch_pushforward_oracle(bundle, d)
    n = bundle.base.n
    rel = d * (bundle.rank - d)
    for other in (schur, constterm, oracle):
        for m in range(n + 1):
            if closed.component(m) != other.component(m):
                return CaseResult(
                    key,
                    False,
                    f"component {m}: closed={closed.component(m)!r} "
                    f"{other.method}={other.component(m)!r}",
                )
    ring = FlagRing(bundle, d)
    for N in range(rel):
        if ring.pushforward_theta_power(N):
            return CaseResult(key, False, f"theta^{N} pushed forward is nonzero")
    for m in range(n + 1):
        value = ring.pushforward_theta_power(rel + m)
        if value != closed.theta_power(rel + m):
            return CaseResult(key, False, f"theta^{rel + m} disagrees with N! * component")
        if value and value.homogeneous_degree() != m:
            return CaseResult(key, False, f"theta^{rel + m} is not homogeneous of degree {m}")
    return CaseResult(key, True)


def _run_cases(jobs, max_workers=None):
    """Run (key, thunk) jobs concurrently, returning results sorted by key."""
    if max_workers == 1 or len(jobs) == 1:
        results = [thunk() for _, thunk in jobs]
    else:
        with ThreadPoolExecutor(max_workers=max_workers or 4) as pool:
            results = list(pool.map(lambda job: job[1](), jobs))
    return sorted(results, key=lambda res: res.key)


def run_agreement_grid(
    max_rank: int = DEFAULT_MAX_RANK,
    truncation: int = DEFAULT_TRUNCATION,
    max_workers=None,
):
    """Four-way agreement for every 1 <= d <= r <= max_rank on the formal
    model and the three split bundles."""
    jobs = []
    for rank in range(1, max_rank + 1):
        for bundle in grid_bundles(rank, truncation):
            for d in range(1, rank + 1):
                key = f"agreement r={rank} d={d} {bundle.label}"
                jobs.append((key, lambda b=bundle, dd=d: check_fourway(b, dd)))
    return _run_cases(jobs, max_workers)


def run_monomial_grid(
    max_rank: int = DEFAULT_MAX_RANK,
    truncation: int = DEFAULT_TRUNCATION,
    trials: int = 100,
    seed: int = 2024,
    max_workers=None,
):
    """Triple agreement (constant term, determinant, oracle) for random
    monomial push-forwards, per (r, d) on the formal model."""

    def one_case(rank, d):
        key = f"monomials r={rank} d={d}"
        rng = random.Random(seed * 10007 + rank * 101 + d)
        bundle = BundleModel.formal(formal_segre(truncation), rank)
        ring = FlagRing(bundle, d)
        for _ in range(trials):
            p = tuple(rng.randint(0, rank + 2) for _ in range(d))
            ct = monomial_pushforward_ct(p, bundle, d)
            dt = monomial_pushforward_det(p, bundle, d)
            orc = ring.from_terms({p: bundle.base.one()}).pushforward()
            if not (ct == dt == orc):
                return CaseResult(
                    key, False, f"p={p}: ct={ct!r} det={dt!r} oracle={orc!r}"
                )
        return CaseResult(key, True)

    jobs = [
        (f"monomials r={rank} d={d}", lambda r=rank, dd=d: one_case(r, dd))
        for rank in range(1, max_rank + 1)
        for d in range(1, rank + 1)
    ]
    return _run_cases(jobs, max_workers)


def _random_laurent(rng, nvars, nterms=4, low=-3, high=5, coeff_bound=9):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(low, high) for _ in range(nvars))
        value = Fraction(rng.randint(-coeff_bound, coeff_bound))
        terms[exps] = terms.get(exps, Fraction(0)) + value
    return LaurentPoly(nvars, terms)


def _symmetrize(poly: LaurentPoly) -> LaurentPoly:
    acc = LaurentPoly.zero(poly.nvars)
    for perm in permutations(range(poly.nvars)):
        acc = acc + poly.permute_variables(perm)
    return acc


def run_phi_suite(seed: int = 7, antisym_trials: int = 200, shift_trials: int = 50,
                  max_power: int = 8, max_d: int = 4):
    """The linear-functional suite: closed form on every small monomial,
    antisymmetry under variable permutations, and the Schur-shift rule."""
    results = []

    def grid_case():
        for d in range(1, max_d + 1):
            for k in _exponent_grid(d, max_power):
                if phi(LaurentPoly.monomial(d, k), d) != phi_eval_monomial(k):
                    return CaseResult(
                        "phi closed form on monomial grid", False, f"k={k}"
                    )
        return CaseResult("phi closed form on monomial grid", True)

    results.append(grid_case())

    rng = random.Random(seed)
    ok = True
    detail = ""
    for _ in range(antisym_trials):
        d = rng.randint(2, max_d)
        f = _random_laurent(rng, d)
        perm = list(range(d))
        rng.shuffle(perm)
        lhs = phi(f.permute_variables(perm), d)
        rhs = phi(f, d)
        if perm_sign(perm) < 0:
            rhs = -rhs
        if lhs != rhs:
            ok = False
            detail = f"perm={perm} f={f!r}"
            break
    results.append(CaseResult(f"phi antisymmetry ({antisym_trials} random cases)", ok, detail))

    ok = True
    detail = ""
    for _ in range(shift_trials):
        d = rng.randint(1, 3)
        base_poly = _random_laurent(rng, d, nterms=3, low=0, high=4)
        f = _symmetrize(base_poly)
        lam = rng.choice(list(partitions_up_to(d, 4)))
        stair = LaurentPoly.monomial(d, tuple(-i for i in range(d)))
        lhs = phi(stair * f * schur_in_t(lam, d), d)
        shifted = LaurentPoly.monomial(d, tuple(lam[i] - i for i in range(d)))
        rhs = phi(shifted * f, d)
        if lhs != rhs:
            ok = False
            detail = f"d={d} lam={lam}"
            break
    results.append(CaseResult(f"phi Schur shift ({shift_trials} random symmetric cases)", ok, detail))
    return results


def _exponent_grid(d, max_power):
    if d == 0:
        yield ()
        return
    for head in range(max_power + 1):
        for rest in _exponent_grid(d - 1, max_power):
            yield (head,) + rest


def run_identity_suite(
    seed: int = 11,
    det_trials: int = 100,
    cauchy_truncation: int = DEFAULT_TRUNCATION,
    gen_cauchy_trials: int = 100,
    gen_cauchy_pairs=((3, 1), (4, 2), (5, 2), (5, 3)),
):
    """Factorial determinant, Cauchy expansion, and the generalized
    Cauchy determinant identity at random rational points."""
    results = []
    rng = random.Random(seed)
    ok = True
    detail = ""
    for _ in range(det_trials):
        d = rng.randint(1, 4)
        x = tuple(rng.randint(0, 10) for _ in range(d))
        if not factorial_det_check(x):
            ok = False
            detail = f"x={x}"
            break
    results.append(CaseResult(f"factorial determinant ({det_trials} random cases)", ok, detail))

    for rank in (2, 3, 4):
        bundle = BundleModel.formal(formal_segre(cauchy_truncation), rank)
        for d in (1, 2, 3):
            witness = cauchy_mismatch_witness(bundle, d, cauchy_truncation)
            results.append(
                CaseResult(
                    f"cauchy expansion r={rank} d={d} (weight {cauchy_truncation})",
                    witness is None,
                    "" if witness is None else f"monomial {witness}",
                )
            )

    for r, d in gen_cauchy_pairs:
        ok = gen_cauchy_check(r, d, trials=gen_cauchy_trials, seed=seed + 100 * r + d)
        results.append(
            CaseResult(
                f"generalized Cauchy determinant r={r} d={d} ({gen_cauchy_trials} points)",
                ok,
            )
        )
    return results


def run_degree_suite():
    """Classical degrees over a point, the hook-length cross-check, and
    the denominator-variant falsification."""
    results = []
    classical = {(4, 2): 2, (5, 2): 5, (6, 2): 14, (6, 3): 42}
    for (r, d), expected in sorted(classical.items()):
        bundle = BundleModel.trivial(point(), r)
        got = plucker_degree(bundle, d).degree
        hook = fiber_degree_hook(r, d)
        ok = got == expected == hook
        results.append(
            CaseResult(
                f"degree G({d},{r}) over a point",
                ok,
                "" if ok else f"formula={got} hook={hook} expected={expected}",
            )
        )
    bundle = BundleModel.trivial(point(), 4)
    wrong = plucker_degree(bundle, 2, DISPLAYED).degree
    right = plucker_degree(bundle, 2, PROOF).degree
    results.append(
        CaseResult(
            "denominator variants split on G(2,4)",
            right == 2 and wrong.denominator != 1,
            f"proof={right} displayed={wrong}",
        )
    )
    quadric = BundleModel.from_chern_roots(projective_space(1), [1, 1])
    results.append(
        CaseResult(
            "degree of P(O(1)+O(1)) over P1",
            plucker_degree(quadric, 1).degree == 2,
        )
    )
    return results


def run_all(max_rank: int = DEFAULT_MAX_RANK, truncation: int = DEFAULT_TRUNCATION,
            seed: int = 11, max_workers=None):
    """Everything the ``verify`` command runs, in report order."""
    results = []
    results.extend(run_agreement_grid(max_rank, truncation, max_workers))
    results.extend(run_monomial_grid(max_rank, truncation, trials=20, seed=seed,
                                     max_workers=max_workers))
    results.extend(run_phi_suite(seed=seed))
    results.extend(run_identity_suite(seed=seed))
    results.extend(run_degree_suite())
    return results
