"""Self-checks of the algebraic laws, runnable from the command line.

Every suite returns a SuiteResult; a suite passes when its failure list is
empty.  Sizes default to values that finish in seconds for n <= 2.
"""

from __future__ import annotations

import random
import time
from itertools import combinations
from typing import Callable, NamedTuple

from .combinatorics import enumerate_istates, gamma_path, is_far
from .grading_groups import (
    check_gprime, deg_prime, deg_prime_from_diagram, gprime_mul, linking2, psi_refine,
    swap_tau_beta, theta,
)
from .osz import (
    OSElement, all_os_generators, diff_gen_os, diff_terms_os, grade_os, mul_os, o_os, rho_os,
)
from .phi import phi_basis, phi_closed_form, phi_word, relation_check
from .splitting import (
    KINDS, build_piece, diff_factorization, homology_basis, homology_dims, interval_context,
    max_maslov_cycle, predicted_dims, quasi_iso_check, split_psi, unsplit_phi, weight_vectors,
)
from .strands import (
    Context, Element, all_generators, diff_gen, diff_terms, doubled_caps, g_min, grade,
    make_context, mul_gen, o_sym, rho, rho_context, right_idempotent,
)
from .f2linalg import reduce_basis
from .notation import format_element, parse_element, dumps, loads

MAX_REPORTED = 25


class SuiteResult(NamedTuple):
    name: str
    checked: int
    failures: list
    seconds: float

    @property
    def ok(self):
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures, {self.seconds:.1f}s"


class _Recorder:
    def __init__(self):
        self.checked = 0
        self.failures = []
        self.dropped = 0

    def check(self, cond, message):
        self.checked += 1
        if not cond:
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(message() if callable(message) else message)
            else:
                self.dropped += 1

    def result(self, name, t0):
        fails = list(self.failures)
        if self.dropped:
            fails.append(f"... and {self.dropped} more")
        return SuiteResult(name, self.checked, fails, time.perf_counter() - t0)


def contexts(n_max: int, n_min: int = 0, plain_only: bool = False, s_choices=None):
    for n in range(n_min, n_max + 1):
        for k in range(n + 2):
            subsets = [()] if plain_only else [
                S for r in range(n + 1) for S in combinations(range(1, n + 1), r)]
            if s_choices is not None:
                subsets = [S for S in subsets if S in s_choices]
            for S in subsets:
                yield make_context(n, k, S)


# ---------------------------------------------------------------- sweeps of pairs and triples

class _Algebra(NamedTuple):
    name: str
    gens: Callable
    left: Callable
    right: Callable
    mul: Callable
    diff: Callable
    grade: Callable


def _algebras():
    return (
        _Algebra("A", all_generators, lambda g: g.x, right_idempotent, mul_gen, diff_gen,
                 grade),
        _Algebra("B", all_os_generators, lambda g: g.x, lambda g: g.y, mul_os, diff_gen_os,
                 grade_os),
    )


def _mul_sets(alg, left, right):
    acc = set()
    for a in left:
        for b in right:
            acc ^= alg.mul(a, b)
    return frozenset(acc)


def _by_left(alg, gens):
    out = {}
    for g in gens:
        out.setdefault(alg.left(g), []).append(g)
    return out


def _sweep(n: int, cap, samples: int, seed: int):
    """Yield (alg, ctx, pairs, triples): exhaustive for n <= 2, sampled at n = 3."""
    rng = random.Random(seed)
    for alg in _algebras():
        for ctx in contexts(min(n, 2)):
            gens = alg.gens(ctx, cap)
            by = _by_left(alg, gens)
            pairs = [(a, b) for a in gens for b in by.get(alg.right(a), ())]
            triples = ((a, b, c) for a, b in pairs for c in by.get(alg.right(b), ()))
            yield alg, ctx, pairs, triples
        if n >= 3:
            pools = []
            for ctx in contexts(3, 3):
                gens = alg.gens(ctx, cap)
                pools.append((ctx, gens, _by_left(alg, gens)))
            pairs_by_ctx = {}
            triples_by_ctx = {}
            drawn = 0
            while drawn < samples:
                ctx, gens, by = rng.choice(pools)
                a = rng.choice(gens)
                bs = by.get(alg.right(a))
                if not bs:
                    continue
                b = rng.choice(bs)
                cs = by.get(alg.right(b))
                if not cs:
                    continue
                c = rng.choice(cs)
                pairs_by_ctx.setdefault(ctx, []).append((a, b))
                triples_by_ctx.setdefault(ctx, []).append((a, b, c))
                drawn += 1
            for ctx in pairs_by_ctx:
                yield alg, ctx, pairs_by_ctx[ctx], iter(triples_by_ctx[ctx])


def suite_algebra(n=2, cap=2, samples=10_000, seed=0, **_):
    """Associativity and the Leibniz rule in A and in B."""
    t0, rec = time.perf_counter(), _Recorder()
    for alg, ctx, pairs, triples in _sweep(n, cap, samples, seed):
        for a, b, c in triples:
            ab = alg.mul(a, b)
            bc = alg.mul(b, c)
            rec.check(_mul_sets(alg, ab, [c]) == _mul_sets(alg, [a], bc),
                      lambda: f"{alg.name}{ctx}: (ab)c != a(bc) for {a}, {b}, {c}")
        for a, b in pairs:
            lhs = set()
            for t in alg.mul(a, b):
                lhs ^= alg.diff(t)
            rhs = _mul_sets(alg, alg.diff(a), [b]) ^ _mul_sets(alg, [a], alg.diff(b))
            rec.check(frozenset(lhs) == rhs, lambda: f"{alg.name}{ctx}: Leibniz fails on {a}, {b}")
    return rec.result("algebra", t0)


def suite_gradings(n=2, cap=2, samples=10_000, seed=0, **_):
    """Maslov drops by one under the differential; Alexander gradings are kept and add up."""
    t0, rec = time.perf_counter(), _Recorder()
    for alg, ctx, pairs, _triples in _sweep(n, cap, samples, seed):
        seen = set()
        for a, b in pairs:
            for g in (a, b):
                if g in seen:
                    continue
                seen.add(g)
                ga = alg.grade(ctx, g)
                for t in alg.diff(g):
                    gt = alg.grade(ctx, t)
                    rec.check(gt.maslov == ga.maslov - 1
                              and gt[1:] == ga[1:],
                              lambda: f"{alg.name}{ctx}: grading of d({g}) term {t}")
            for t in alg.mul(a, b):
                ga, gb, gt = alg.grade(ctx, a), alg.grade(ctx, b), alg.grade(ctx, t)
                rec.check(gt.maslov == ga.maslov + gb.maslov
                          and gt.alexander2 == ga.alexander2 + gb.alexander2
                          and gt.refined2 == tuple(u + v for u, v in zip(ga.refined2, gb.refined2))
                          and gt.unrefined == tuple(u + v for u, v in zip(ga.unrefined, gb.unrefined)),
                          lambda: f"{alg.name}{ctx}: gradings not additive on {a} * {b}")
    return rec.result("gradings", t0)


def suite_dsquare(n=2, cap=3, **_):
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(n):
        for g in all_generators(ctx, cap):
            rec.check(not diff_terms(diff_gen(g)), lambda: f"A{ctx}: dd != 0 on {g}")
        for g in all_os_generators(ctx, cap):
            rec.check(not diff_terms_os(diff_gen_os(g)), lambda: f"B{ctx}: dd != 0 on {g}")
    return rec.result("dsquare", t0)


def suite_group(n=2, cap=3, pair_cap=2, samples=10_000, seed=0, **_):
    """deg' against Theta_S, Psi, the diagram formula, products and the linking form."""
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(n):
        for g in all_generators(ctx, cap):
            d = deg_prime(g)
            gr = grade(ctx, g)
            try:
                check_gprime(d)
                ok = theta(ctx.S, d) == (gr.maslov, gr.unrefined)
            except Exception:  # noqa: BLE001 - reported as a failure below
                ok = False
            rec.check(ok, lambda: f"{ctx}: Theta(deg'({g})) != (m, w_un)")
            rec.check(psi_refine(gr.maslov, gr.unrefined) == (gr.maslov, gr.refined2),
                      lambda: f"{ctx}: Psi does not recover (m, w) on {g}")
            rec.check(deg_prime_from_diagram(g, "plus") == d == deg_prime_from_diagram(g, "minus"),
                      lambda: f"{ctx}: diagram deg' differs on {g}")
    for alg, ctx, pairs, _ in _sweep(n, pair_cap, samples, seed):
        if alg.name != "A":
            continue
        for a, b in pairs:
            for t in mul_gen(a, b):
                rec.check(deg_prime(t) == gprime_mul(deg_prime(a), deg_prime(b)),
                          lambda: f"{ctx}: deg' not multiplicative on {a} * {b}")
    for m in range(1, n + 1):
        basis = [tuple(int(j == i) for j in range(2 * m)) for i in range(2 * m)]
        for u in basis:
            for v in basis:
                rec.check(linking2(u, v) == 0, lambda: f"L({u}, {v}) != 0")
    return rec.result("group", t0)


def suite_splitting(n=2, cap=3, **_):
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(n, plain_only=True):
        for g in all_generators(ctx, cap):
            f = split_psi(ctx, g)
            rec.check(unsplit_phi(f) == g, lambda: f"{ctx}: phi(psi({g})) != {g}")
            rec.check(diff_factorization(f) == {split_psi(ctx, h) for h in diff_gen(g)},
                      lambda: f"{ctx}: psi is not a chain map at {g}")
            gr = grade(ctx, g)
            m_local, w_local = 0, list(gr.refined2)
            for i, e in f.crossed_exponents:
                w_local[i - 1] -= 2 * e + 1
            for fa in f.factors:
                lctx, _ = interval_context(fa.kind, fa.interval[1] - fa.interval[0] + 1)
                lg = grade(lctx, fa.local)
                m_local += lg.maslov
                lo, hi = fa.interval
                w_local[lo - 1:hi] = [u - v for u, v in zip(w_local[lo - 1:hi], lg.refined2)]
            rec.check(m_local == gr.maslov and not any(w_local),
                      lambda: f"{ctx}: splitting does not preserve gradings at {g}")
    return rec.result("splitting", t0)


def suite_intervals(l_max=3, r_max=3, **_):
    """Homology of the interval algebras in each weight, and the cycles a^r."""
    from itertools import product
    t0, rec = time.perf_counter(), _Recorder()
    for kind in KINDS:
        for l in range(1, l_max + 1):
            for r in product(range(r_max + 1), repeat=l):
                lctx, a = max_maslov_cycle(kind, l, r)
                x = interval_context(kind, l)[1]
                piece = build_piece("A", lctx, x, x, tuple(2 * v for v in r))
                dims = homology_dims(piece)
                expected = {} if kind == "generating" and 0 not in r else {0: 1}
                rec.check(dims == expected, lambda: f"{kind}({l}) r={r}: H={dims}, expected {expected}")
                rec.check(not diff_terms(a.terms), lambda: f"{kind}({l}) r={r}: a^r is not a cycle")
                if expected:
                    bounds = piece.boundaries[1].columns() if 1 in piece.levels else []
                    v = piece.vector(0, a.terms)
                    rec.check(v and len(reduce_basis(bounds + [v])) == len(reduce_basis(bounds)) + 1,
                              lambda: f"{kind}({l}) r={r}: a^r does not generate homology")
    for kind in KINDS:
        for l in range(1, l_max + 1):
            for r in product(range(2), repeat=l):
                for r2 in product(range(2), repeat=l):
                    lctx, a = max_maslov_cycle(kind, l, r)
                    _, b = max_maslov_cycle(kind, l, r2)
                    _, ab = max_maslov_cycle(kind, l, tuple(u + v for u, v in zip(r, r2)))
                    rec.check(a * b == ab, lambda: f"{kind}({l}): a^{r} a^{r2} != a^(r+r')")
    return rec.result("intervals", t0)


def suite_homology(n=2, cap=3, **_):
    """Every (x, y, w) piece of A(n, k) has the homology of F2[U]/(p_G) in that weight."""
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(n, plain_only=True):
        cap2 = doubled_caps(ctx.n, cap)
        states = enumerate_istates(ctx.n, ctx.k)
        for x in states:
            for y in states:
                if is_far(x, y):
                    continue
                for w2 in weight_vectors(ctx, x, y, cap2):
                    piece = build_piece("A", ctx, x, y, w2)
                    dims = homology_dims(piece)
                    pred = predicted_dims(ctx, x, y, [v / 2 for v in w2])
                    rec.check(dims == pred and set(dims) <= {0},
                              lambda: f"{ctx} x={x} y={y} w2={w2}: H={dims}, predicted {pred}")
    return rec.result("homology", t0)


QI_S_AT_3 = ((), (2,), (1, 2, 3))


def suite_qi(n=2, cap=2, jobs=1, **_):
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(min(n, 2)):
        rep = quasi_iso_check(ctx.n, ctx.k, ctx.S, cap, jobs=jobs)
        rec.checked += rep.pieces - 1
        rec.check(rep.ok, lambda: f"{ctx}: {rep.failures[:3]}")
    if n >= 3:
        for ctx in contexts(3, 3, s_choices=QI_S_AT_3):
            rep = quasi_iso_check(ctx.n, ctx.k, ctx.S, cap, jobs=jobs)
            rec.checked += rep.pieces - 1
            rec.check(rep.ok, lambda: f"{ctx}: {rep.failures[:3]}")
    return rec.result("qi", t0)


def suite_relations(n=2, cap=2, **_):
    """Defining relations through Phi, multiplicativity of Phi, and its rank on each piece."""
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(n):
        rep = relation_check(ctx.n, ctx.k, ctx.S, ctx=ctx)
        rec.checked += rep.checked - 1
        rec.check(rep.ok, lambda: f"{ctx}: {rep.failures[:3]}")
        gens = all_os_generators(ctx, cap)
        images = {g: phi_closed_form(ctx, g) for g in gens}
        by = {}
        for g in gens:
            by.setdefault(g.x, []).append(g)
        for a in gens:
            for b in by.get(a.y, ()):
                prod = Element(ctx)
                for t in mul_os(a, b):
                    prod = prod + phi_closed_form(ctx, t)
                rec.check(prod == images[a] * images[b],
                          lambda: f"{ctx}: Phi(ab) != Phi(a)Phi(b) for {a}, {b}")
        for g in gens:
            gb = grade_os(ctx, g)
            for t in images[g].terms:
                ga = grade(ctx, t)
                rec.check((ga.maslov, ga.refined2, ga.alexander2) == (gb.maslov, gb.refined2, gb.alexander2)
                          and ga.unrefined == swap_tau_beta(gb.unrefined),
                          lambda: f"{ctx}: Phi changes the grading of {g}")
        pieces = {}
        for g in gens:
            pieces.setdefault((g.x, g.y, grade_os(ctx, g).refined2), []).append(g)
        for key, members in pieces.items():
            index = {}
            vecs = []
            for g in members:
                v = 0
                for t in images[g].terms:
                    v ^= 1 << index.setdefault(t, len(index))
                vecs.append(v)
            rec.check(len(reduce_basis(vecs)) == len(vecs),
                      lambda: f"{ctx}: Phi is not injective on piece {key}")
    return rec.result("relations", t0)


def suite_symmetry(n=2, cap=2, **_):
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(n):
        rctx = rho_context(ctx)
        agens = all_generators(ctx, cap)
        for g in agens:
            rg, og = rho(ctx, g), o_sym(g)
            rec.check(rho(rctx, rg) == g and o_sym(og) == g
                      and rho(ctx, og) == o_sym(rg),
                      lambda: f"A{ctx}: symmetry identities fail on {g}")
            rec.check({rho(ctx, t) for t in diff_gen(g)} == diff_gen(rg)
                      and {o_sym(t) for t in diff_gen(g)} == diff_gen(og),
                      lambda: f"A{ctx}: a symmetry does not commute with d on {g}")
            un = grade(ctx, g).unrefined
            flipped = tuple(reversed(un))  # tau_i <-> beta_{n+1-i}
            rec.check(grade(rctx, rg).unrefined == flipped
                      and grade(ctx, og).unrefined == swap_tau_beta(un),
                      lambda: f"A{ctx}: symmetries move the unrefined grading wrongly on {g}")
        by = {}
        for g in agens:
            by.setdefault(g.x, []).append(g)
        if ctx.n <= 2:
            for a in agens:
                for b in by.get(right_idempotent(a), ()):
                    ab = mul_gen(a, b)
                    rec.check({rho(ctx, t) for t in ab} == mul_gen(rho(ctx, a), rho(ctx, b))
                              and {o_sym(t) for t in ab} == mul_gen(o_sym(b), o_sym(a)),
                              lambda: f"A{ctx}: symmetries not multiplicative on {a}, {b}")
        for g in all_os_generators(ctx, cap):
            rg, og = rho_os(ctx, g), o_os(g)
            rec.check(rho_os(rctx, rg) == g and o_os(og) == g and rho_os(ctx, og) == o_os(rg),
                      lambda: f"B{ctx}: symmetry identities fail on {g}")
            img = phi_closed_form(ctx, g)
            rec.check(phi_closed_form(rctx, rg).terms == {rho(ctx, t) for t in img.terms},
                      lambda: f"{ctx}: Phi rho != rho Phi on {g}")
            rec.check(phi_closed_form(ctx, og).terms == {o_sym(t) for t in img.terms},
                      lambda: f"{ctx}: Phi o != o Phi on {g}")
    return rec.result("symmetry", t0)


def suite_closedform(n=2, cap=3, **_):
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(n):
        for g in all_os_generators(ctx, cap):
            rec.check(phi_basis(ctx, g) == phi_closed_form(ctx, g),
                      lambda: f"{ctx}: phi_basis != phi_closed_form on {g}")
        states = enumerate_istates(ctx.n, ctx.k)
        for x in states:
            for y in states:
                if is_far(x, y):
                    continue
                path_image = phi_word(ctx, x, gamma_path(x, y))
                rec.check(path_image.terms == {g_min(ctx.n, x, y)},
                          lambda: f"{ctx}: Phi(gamma_{x},{y}) != g_min")
    return rec.result("closedform", t0)


def suite_notation(n=2, cap=2, **_):
    t0, rec = time.perf_counter(), _Recorder()
    for ctx in contexts(n):
        for g in all_generators(ctx, cap):
            e = Element(ctx, {g})
            text = format_element(e)
            rec.check(parse_element(text, ctx) == e and loads(dumps(e)) == e,
                      lambda: f"{ctx}: round trip fails for {text!r}")
        for g in all_os_generators(ctx, cap):
            e = OSElement(ctx, {g})
            text = format_element(e)
            rec.check(parse_element(text, ctx, algebra="B") == e and loads(dumps(e)) == e,
                      lambda: f"{ctx}: round trip fails for {text!r}")
    return rec.result("notation", t0)


SUITES = {
    "dsquare": suite_dsquare,
    "algebra": suite_algebra,
    "gradings": suite_gradings,
    "group": suite_group,
    "splitting": suite_splitting,
    "intervals": suite_intervals,
    "homology": suite_homology,
    "qi": suite_qi,
    "relations": suite_relations,
    "symmetry": suite_symmetry,
    "closedform": suite_closedform,
    "notation": suite_notation,
}


def run_suites(names, **params) -> list[SuiteResult]:
    if names == "all" or names == ["all"]:
        names = list(SUITES)
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        out.append(SUITES[name](**params))
    return out


__all__ = ["SuiteResult", "SUITES", "run_suites", "contexts"] + list(
    f.__name__ for f in SUITES.values())
