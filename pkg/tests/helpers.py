"""Shared test fixtures: the naive rewriting oracle and random data builders.

The oracle normal-orders a word one adjacent swap at a time, with no merge
caching and no early truncation, so it shares nothing with the engine's
optimized kernels beyond the bracket table itself.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from qtwist import AlgebraSpec, build_context, preset
from qtwist.algebra import Algebra, Monomial

Q = Fraction


def naive_normal_order(alg, word, coeff=Q(1), extra_power=0, out=None):
    """One-swap-at-a-time rewriting of a word into the PBW basis.

    Prunes branches whose minimum reachable power already exceeds the
    truncation order (powers never decrease under rewriting).
    """
    if out is None:
        out = {}
    word = list(word)
    if extra_power + sum(k for _, k in word) > alg.order:
        return out
    m = alg.m
    for p in range(len(word) - 1):
        g1, k1 = word[p]
        g2, k2 = word[p + 1]
        if g1 >= m and g2 < m:
            j, mu = g2, g1 - m
            swapped = word[:p] + [(g2, k2), (g1, k1)] + word[p + 2 :]
            naive_normal_order(alg, swapped, coeff, extra_power, out)
            for (kb, mono), cb in alg.bracket(j, mu).items():
                letters = []
                for i, e in enumerate(mono.h):
                    letters.extend([(i, 0)] * e)
                rest = word[:p] + letters + word[p + 2 :]
                naive_normal_order(
                    alg, rest, -coeff * cb, extra_power + kb + k1 + k2, out
                )
            return out
    h = [0] * alg.m
    x = [0] * alg.n
    k = extra_power
    for gid, kp in word:
        k += kp
        if gid < m:
            h[gid] += 1
        else:
            x[gid - m] += 1
    if k <= alg.order:
        key = (k, Monomial(tuple(h), tuple(x)))
        out[key] = out.get(key, Q(0)) + coeff
        if out[key] == 0:
            del out[key]
    return out


def mono_word(alg, mono):
    word = []
    for i, e in enumerate(mono.h):
        word.extend([(i, 0)] * e)
    for mu, e in enumerate(mono.x):
        word.extend([(alg.m + mu, 0)] * e)
    return word


def naive_mul_elements(alg, a, b):
    """Product of two elements via the naive oracle, as an Element."""
    out = {}
    for (k1, m1), c1 in a.terms.items():
        for (k2, m2), c2 in b.terms.items():
            naive_normal_order(
                alg, mono_word(alg, m1) + mono_word(alg, m2), c1 * c2, k1 + k2, out
            )
    return alg.element(out)


def naive_mul_tensors(alg, a, b):
    """Legwise product of two tensors via the naive oracle."""
    out = {}
    for (k1, monos1), c1 in a.terms.items():
        for (k2, monos2), c2 in b.terms.items():
            combos = [(k1 + k2, (), c1 * c2)]
            for leg in range(a.legs):
                legmap = naive_normal_order(
                    alg, mono_word(alg, monos1[leg]) + mono_word(alg, monos2[leg])
                )
                nxt = []
                for k, monos, c in combos:
                    for (km, mono), cm in legmap.items():
                        if k + km <= alg.order:
                            nxt.append((k + km, monos + (mono,), c * cm))
                combos = nxt
            for k, monos, c in combos:
                out[(k, monos)] = out.get((k, monos), Q(0)) + c
    return alg.tensor_element(a.legs, out)


def naive_exp_tensor(alg, a, order):
    """Truncated exponential via repeated naive products."""
    from math import factorial

    acc = alg.tensor_unit(a.legs)
    power = acc
    for j in range(1, order + 1):
        power = naive_mul_tensors(alg, power, a)
        if power.is_zero():
            break
        acc = acc + power.scale(Q(1, factorial(j)))
    return acc


def random_table(rng, m, n, order, max_terms=2, max_deg=2):
    """A random pure-H bracket table (any table gives a well-defined ring)."""
    table = {}
    for j in range(m):
        for mu in range(n):
            entry = {}
            for _ in range(rng.randint(0, max_terms)):
                k = rng.randint(0, min(order, 2))
                h = tuple(rng.randint(0, 1) for _ in range(m))
                if sum(h) > max_deg:
                    continue
                c = Q(rng.randint(-3, 3))
                if c:
                    key = (k, Monomial(h, (0,) * n))
                    entry[key] = entry.get(key, Q(0)) + c
            table[(j, mu)] = entry
    return table


def random_algebra(rng, max_dim=3, max_order=4):
    m = rng.randint(1, max_dim)
    n = rng.randint(1, max_dim)
    order = rng.randint(0, max_order)
    return Algebra(m, n, order, random_table(rng, m, n, order))


def random_word(rng, alg, max_len=6, max_power=2):
    length = rng.randint(0, max_len)
    return [
        (rng.randrange(alg.m + alg.n), rng.randint(0, max_power))
        for _ in range(length)
    ]


def random_element(rng, alg, max_terms=3, max_deg=2, max_power=None):
    max_power = alg.order if max_power is None else max_power
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        k = rng.randint(0, max_power)
        h = tuple(rng.randint(0, max_deg) for _ in range(alg.m))
        x = tuple(rng.randint(0, max_deg) for _ in range(alg.n))
        c = Q(rng.randint(-4, 4), rng.randint(1, 3))
        terms[(k, Monomial(h, x))] = c
    return alg.element(terms)


def random_tensor(rng, alg, legs=2, max_terms=3, max_deg=1):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        k = rng.randint(0, alg.order)
        monos = tuple(
            Monomial(
                tuple(rng.randint(0, max_deg) for _ in range(alg.m)),
                tuple(rng.randint(0, max_deg) for _ in range(alg.n)),
            )
            for _ in range(legs)
        )
        c = Q(rng.randint(-4, 4), rng.randint(1, 3))
        terms[(k, monos)] = c
    return alg.tensor_element(legs, terms)


def abelian_spec(dim=2, order=3):
    """B = 0: every bracket vanishes, all couplings are zero."""
    zeros = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    eye = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    return AlgebraSpec(name=f"abelian-{dim}", m=dim, n=dim, B=zeros, r=eye, order=order)


def random_valid_spec_2d(rng, order=3):
    """A random valid 2-dimensional declaration.

    Structure constants of the commutative associative algebra Q[t]/(t^2 - theta)
    in a random invertible basis; with r = identity this satisfies every
    classical precondition by construction.
    """
    theta = Q(rng.randint(-3, 3))
    # c[mu][sigma][nu]: coefficient of e_sigma in e_mu o e_nu
    c = [
        [[Q(1), Q(0)], [Q(0), Q(1)]],  # e_0 o e_0 = e_0 ; e_0 o e_1 = e_1
        [[Q(0), theta], [Q(1), Q(0)]],  # e_1 o e_0 = e_1 ; e_1 o e_1 = theta e_0
    ]
    while True:
        p = [[Q(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
        det = p[0][0] * p[1][1] - p[0][1] * p[1][0]
        if det:
            break
    inv = [[p[1][1] / det, -p[0][1] / det], [-p[1][0] / det, p[0][0] / det]]
    moved = [[[Q(0)] * 2 for _ in range(2)] for _ in range(2)]
    for mu in range(2):
        for sigma in range(2):
            for nu in range(2):
                acc = Q(0)
                for a in range(2):
                    for b in range(2):
                        for rho in range(2):
                            acc += inv[sigma][rho] * c[a][rho][b] * p[a][mu] * p[b][nu]
                moved[mu][sigma][nu] = acc
    B = [[[2 * moved[i][j][mu] for mu in range(2)] for j in range(2)] for i in range(2)]
    eye = [[1, 0], [0, 1]]
    return AlgebraSpec(
        name="random-2d", m=2, n=2, B=B, r=eye, order=order
    )


@lru_cache(maxsize=None)
def cached_context(name, order=None):
    spec = preset(name)
    if order is not None and order != spec.order:
        spec = spec.with_order(order)
    return build_context(spec)


def mutate_tensor(alg, tensor, key, delta=Q(1)):
    terms = dict(tensor.terms)
    terms[key] = terms.get(key, Q(0)) + delta
    return alg.tensor_element(tensor.legs, terms)


def run_single_mutation(ctx, rng):
    """Perturb one stored rational in B, r, the twist, or the R-matrix by +1.

    The mutation hits the stored value only: nothing upstream is re-derived,
    so the perturbed context is internally inconsistent and the suite must
    notice.  Returns (target, report).
    """
    import dataclasses

    from qtwist.hopf import HopfContext
    from qtwist.verify import run_suite

    spec = ctx.spec
    target = rng.choice(("B", "r", "phi", "rmat"))
    if target == "B":
        i, j, mu = (
            rng.randrange(spec.m),
            rng.randrange(spec.m),
            rng.randrange(spec.n),
        )
        B = [
            [
                [
                    spec.B[a][b][c] + (1 if (a, b, c) == (i, j, mu) else 0)
                    for c in range(spec.n)
                ]
                for b in range(spec.m)
            ]
            for a in range(spec.m)
        ]
        stale = dataclasses.replace(ctx.derived, spec=dataclasses.replace(spec, B=B))
        return target, run_suite(HopfContext(stale), "all")
    if target == "r":
        i, mu = rng.randrange(spec.m), rng.randrange(spec.n)
        r = [
            [spec.r[a][c] + (1 if (a, c) == (i, mu) else 0) for c in range(spec.n)]
            for a in range(spec.m)
        ]
        stale = dataclasses.replace(ctx.derived, spec=dataclasses.replace(spec, r=r))
        return target, run_suite(HopfContext(stale), "all")
    if target == "phi":
        key = rng.choice(sorted(ctx.phi.terms))
        bad = mutate_tensor(ctx.algebra, ctx.phi, key)
        return target, run_suite(ctx, "all", phi=bad)
    key = rng.choice(sorted(ctx.universal_r.terms))
    bad = mutate_tensor(ctx.algebra, ctx.universal_r, key)
    return target, run_suite(ctx, "all", rmat=bad)


@lru_cache(maxsize=1)
def genuine_algebras():
    """Deformed algebras whose tables come from real derivations.

    Arbitrary random tables give a well-defined rewriting of any fixed word,
    but imposing commutativity inside the X and H blocks is only consistent
    when the table satisfies the compatibility the construction guarantees.
    Semantic properties (oracle equivalence on words, associativity, exp
    identities) are therefore quantified over this pool, which spans
    dimensions 1..3 and orders 0..4.
    """
    from qtwist.model import classical_algebra

    rng = random.Random(99)
    pool = [
        cached_context("jordanian-borel", 0).algebra,
        cached_context("jordanian-borel", 2).algebra,
        cached_context("jordanian-borel", 4).algebra,
        cached_context("poincare-null-plane", 2).algebra,
        cached_context("poincare-null-plane", 3).algebra,
        cached_context("poincare-null-plane", 4).algebra,
        cached_context("shift-ring(2)", 3).algebra,
        cached_context("shift-ring(3)", 4).algebra,
        classical_algebra(preset("poincare-null-plane")),
        build_context(abelian_spec()).algebra,
    ]
    for _ in range(4):
        pool.append(build_context(random_valid_spec_2d(rng, order=4)).algebra)
    return tuple(pool)
