"""Seeded property suites shared by the CLI and the test-suite.

Every suite takes a :class:`VarietyContext` and returns a
:class:`SuiteResult`; the same context always gives the same result.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import munn
from .automata import canonical_serialize, fold, iso_check, linear_graph
from .ffbr import (
    SCHEMES,
    VarietyContext,
    check_identity,
    decide_equal,
    element_leq,
    evaluate,
    max_element,
    mul,
    plain_element,
    positive_element,
    scheme_holds_in,
    sigma_related,
)
from .generators import (
    balanced_word,
    extended_labels,
    random_idempotent_word,
    random_positive,
    random_rewrite,
    random_term,
    random_word,
    trivial_word,
)
from .oracle import OracleVerdict, WordOracle, term_oracle
from .perfect import crosscheck, eval_p, leq_p, same_shape
from .stephen import close, closure_of_word, decide_equal_inv, is_idempotent
from .terms import (
    Alphabet,
    Barred,
    Gen,
    Max,
    Mul,
    Plain,
    SignedLetter,
    Star,
    Variety,
    format_term,
    format_word,
    gens,
    involutive_inverse,
    parse_word,
)

MAX_REPORTED = 20


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check(self, condition: bool, what: Callable[[], str] | str) -> bool:
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(what() if callable(what) else what)
        return condition

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {status} ({self.passed} passed, {self.failed} failed)"

    def to_record(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "passed": self.passed,
            "failed": self.failed,
            "failures": list(self.failures),
            "notes": {k: v for k, v in self.notes.items()},
        }


def _rng(ctx: VarietyContext, salt: str) -> random.Random:
    return random.Random(f"{ctx.seed}:{salt}")


# -- identities --------------------------------------------------------------------

IDENTITY_SCHEMES = ("birestriction-axioms", "a1n", "M2", "left_s", "right_s", "perf")


def identities(ctx: VarietyContext, count: int = 200, max_size: int = 5) -> SuiteResult:
    """Each scheme under ``count`` random substitutions.

    Schemes that hold in the variety must pass every instance.  For the
    others the suite insists on at least one counterexample.
    """
    res = SuiteResult(f"identities[{ctx.variety.value}]")
    rng = _rng(ctx, "identities")
    letters = ctx.alphabet.letters
    subs = [{"x": Gen(letters[0]), "y": Gen(letters[-1])}]
    subs += [
        {"x": random_term(rng, letters, rng.randint(1, max_size)), "y": random_term(rng, letters, rng.randint(1, max_size))}
        for _ in range(count - 1)
    ]
    if len(letters) > 1:
        subs[0]["y"] = Gen(letters[1])
    for name in IDENTITY_SCHEMES:
        if scheme_holds_in(name, ctx.variety):
            bad = 0
            for sub in subs:
                ok = check_identity(name, sub, ctx)
                bad += not ok
                res.check(ok, lambda: f"{name} fails at x={format_term(sub['x'])}, y={format_term(sub['y'])}")
            res.notes[name] = f"holds on {len(subs) - bad}/{len(subs)}"
        else:
            witness = next((s for s in subs if not check_identity(name, s, ctx)), None)
            res.check(witness is not None, f"{name}: no counterexample among {len(subs)} substitutions")
            if witness is not None:
                res.notes[name] = f"refuted at x={format_term(witness['x'])}, y={format_term(witness['y'])}"
    return res


# -- the D map --------------------------------------------------------------------

WORKED_EXAMPLE = ("a,b,c,d,e,f", "a c' b' d e f", "((b c a^*)^+ d e f)^*")


def _d(w):
    return munn.fbr_eval(munn.d_term(w))


def dmap(ctx: VarietyContext, count: int = 100, max_len: int = 6) -> SuiteResult:
    from .terms import parse_term

    res = SuiteResult("dmap")
    alphabet = Alphabet.parse(WORKED_EXAMPLE[0])
    w = parse_word(WORKED_EXAMPLE[1], alphabet)
    expected = parse_term(WORKED_EXAMPLE[2], alphabet)
    res.check(munn.d_term(w) == expected, "worked example: D term differs syntactically")
    res.check(munn.fbr_equal(munn.d_term(w), expected), "worked example: D term differs in value")

    rng = _rng(ctx, "dmap")
    letters = ctx.alphabet.letters[:3]
    labels = [Plain(x) for x in letters]
    seen: dict[munn.FBRElement, list] = {}
    for _ in range(count):
        v = random_word(rng, labels, max_len)
        vi = involutive_inverse(v)
        e = random_idempotent_word(rng, labels, max_len=2, parts=1)
        u = random_word(rng, labels, max_len)
        show = format_word(v) or "1"
        res.check(_d(vi) == _d(v + vi), lambda: f"D(v^-1) != D(v v^-1) for v={show}")
        res.check(_d(v) == _d(vi + v), lambda: f"D(v) != D(v^-1 v) for v={show}")
        de = munn.fbr_mul(_d(v), _d(e))
        res.check(de == _d(v + e), lambda: f"D(v) D(e) != D(v e) for v={show}, e={format_word(e)}")
        res.check(_d(u + v + vi) == munn.fbr_mul(_d(u), _d(vi)), lambda: f"D(u v v^-1) != D(u) D(v^-1) for u={format_word(u)}, v={show}")
        # psi(D_w) = w^* in the free inverse monoid
        psi = munn.psi_fi(munn.d_term(v))
        res.check(psi == munn.fi_star(munn.munn_of_word(v)), lambda: f"psi(D_v) != v^* for v={show}")
        if munn.munn_of_word(e).is_idempotent():
            res.check(munn.psi_fi(munn.d_term(e)) == munn.munn_of_word(e), lambda: f"psi(D_e) != e for e={format_word(e)}")
        seen.setdefault(_d(v), []).append(v)
    # D_u = D_v implies D_{uw} = D_{vw}
    tested = 0
    for group in seen.values():
        for a, b in itertools.combinations(group[:4], 2):
            for _ in range(3):
                t = random_word(rng, labels, 3)
                tested += 1
                res.check(_d(a + t) == _d(b + t), lambda: f"right congruence fails for {format_word(a)} ~ {format_word(b)}")
    res.notes["congruence_pairs"] = tested
    return res


# -- coordinate morphisms -----------------------------------------------------------


def morphism(ctx: VarietyContext, count: int = 100, max_len: int = 4) -> SuiteResult:
    """``u -> (u^+, u)`` is multiplicative in both coordinatizations."""
    res = SuiteResult("morphism")
    rng = _rng(ctx, "morphism")
    letters = ctx.alphabet.letters
    x = letters[0]
    tx = munn.munn_of_word((SignedLetter(Plain(x), 1),))
    prod = munn.fi_mul(tx, munn.fi_inv(tx))
    res.check(prod == munn.MunnTree(frozenset({(), ((x, 1),)}), ()), "tau(x) tau(x^-1) is not (x^+, 1)")
    res.check(prod != munn.IDENTITY_TREE, "tau(x) tau(x^-1) collapsed to the identity")
    for _ in range(count):
        u = random_positive(rng, letters, max_len)
        v = random_positive(rng, letters, max_len)
        shown = f"u={''.join(u) or '1'}, v={''.join(v) or '1'}"
        res.check(
            munn.fbr_mul(munn.fbr_positive(u), munn.fbr_positive(v)) == munn.fbr_positive(u + v),
            lambda: f"munn model: not multiplicative at {shown}",
        )
        res.check(
            munn.fbr_eval(gens(u + v)) == munn.fbr_positive(u + v),
            lambda: f"munn model: generator product differs at {shown}",
        )
        for variety in Variety:
            ctx_v = VarietyContext(ctx.alphabet, variety, ctx.budget, ctx.seed)
            prod = mul(plain_element(u, variety, ctx.budget), plain_element(v, variety, ctx.budget), ctx.budget)
            res.check(prod == plain_element(u + v, variety, ctx.budget), lambda: f"{variety.value}: not multiplicative at {shown}")
            res.check(prod == evaluate(gens(u + v), ctx_v), lambda: f"{variety.value}: generator product differs at {shown}")
            # maxima multiply only in P; elsewhere the product sits below m(uv)
            ma = mul(positive_element(u, variety, ctx.budget), positive_element(v, variety, ctx.budget), ctx.budget)
            muv = positive_element(u + v, variety, ctx.budget)
            if variety is Variety.P:
                res.check(ma == muv, lambda: f"P: m(u) m(v) != m(uv) at {shown}")
            res.check(element_leq(ma, muv), lambda: f"{variety.value}: m(u) m(v) not below m(uv) at {shown}")
    return res


# -- projection correspondence ------------------------------------------------------


def projection(ctx: VarietyContext, count: int = 50, max_bar: int = 2) -> SuiteResult:
    """``D_w`` evaluated in the free object is the closed graph of ``w`` rooted at its start."""
    from .munn import d_term

    res = SuiteResult("projection")
    rng = _rng(ctx, "projection")
    labels = extended_labels(ctx.alphabet.letters[:2], max_bar)
    free = VarietyContext(ctx.alphabet, Variety.FREE, ctx.budget, ctx.seed)
    for _ in range(count):
        w = random_idempotent_word(rng, labels, max_len=3, parts=2)
        el = evaluate(d_term(w), free)
        g = closure_of_word(w, Variety.FREE, ctx.budget)
        ok = el.u == () and iso_check(el.graph, g.reroot(g.start, g.start))
        res.check(ok, lambda: f"D term of {format_word(w)} does not match its closure")
    return res


# -- engine robustness ----------------------------------------------------------------


def confluence(ctx: VarietyContext, count: int = 20, shuffles: int = 10, max_len: int = 10) -> SuiteResult:
    res = SuiteResult(f"confluence[{ctx.variety.value}]")
    rng = _rng(ctx, "confluence")
    letters = ctx.alphabet.letters[:3]
    labels = extended_labels(letters, 1 if ctx.variety is Variety.P else 2)
    for _ in range(count):
        w = random_word(rng, labels, max_len, 1)
        shown = format_word(w)
        base = linear_graph(w if ctx.variety is not Variety.P else _expand(w))
        folded = canonical_serialize(fold(base))
        ref, _ = close(base, ctx.variety, ctx.budget)
        ref_bytes = canonical_serialize(ref)
        for k in range(shuffles):
            sub = random.Random(rng.random())
            res.check(canonical_serialize(fold(base, sub)) == folded, lambda: f"fold order dependence on {shown}")
            out, _ = close(base, ctx.variety, ctx.budget, sub)
            res.check(canonical_serialize(out) == ref_bytes, lambda: f"closure order dependence on {shown}")
        again, trace = close(ref, ctx.variety, ctx.budget)
        res.check(canonical_serialize(again) == ref_bytes and not trace, lambda: f"closure not idempotent on {shown}")
        if ctx.variety is not Variety.P:
            res.check(len(ref.vertices) <= len(fold(base).vertices), lambda: f"closure grew the vertex set on {shown}")
    return res


def _expand(w):
    from .terms import expand_barred

    return expand_barred(w)


def eunitary(ctx: VarietyContext, count: int = 100) -> SuiteResult:
    """Words with trivial group value are idempotent where the variety is E-unitary."""
    res = SuiteResult(f"eunitary[{ctx.variety.value}]")
    rng = _rng(ctx, "eunitary")
    letters = ctx.alphabet.letters
    if ctx.variety is Variety.P:
        words = [trivial_word(rng, letters[:2], depth=3, max_power=1, max_bar=1) for _ in range(count)]
    else:
        words = [balanced_word(rng, letters[0]) for _ in range(count)]
    refuted = 0
    for w in words:
        ok = is_idempotent(w, ctx.variety, ctx.budget)
        refuted += not ok
        if ctx.variety is not Variety.FREE:
            res.check(ok, lambda: f"{format_word(w)} is not idempotent")
    if ctx.variety is Variety.FREE:
        # the free object is not E-unitary; expect a witness instead
        res.check(refuted > 0, "no non-idempotent word with trivial group value found")
    res.notes["non_idempotent"] = refuted
    return res


def oracle(ctx: VarietyContext, count: int = 40, size: int = 6, depth: int = 6) -> SuiteResult:
    """No pair certified equal by the rewriting oracles is called unequal by the engine."""
    res = SuiteResult(f"oracle[{ctx.variety.value}]")
    rng = _rng(ctx, "oracle")
    letters = ctx.alphabet.letters[:2]
    rewriter = term_oracle(ctx.variety)
    certified = 0
    for i in range(count):
        t1 = random_term(rng, letters, rng.randint(1, size))
        t2 = random_rewrite(rng, t1, rewriter, steps=2) if i % 2 == 0 else random_term(rng, letters, rng.randint(1, size))
        verdict = rewriter.equal(t1, t2, depth)
        if verdict is OracleVerdict.EQUAL:
            certified += 1
            res.check(decide_equal(t1, t2, ctx), lambda: f"oracle-certified pair called unequal: {format_term(t1)} vs {format_term(t2)}")
    res.notes["term_pairs_certified"] = certified
    # signed words of length <= 3 over x, [x], [xx]
    x = letters[0]
    labs = [Plain(x), Barred((x,)), Barred((x, x))]
    lets = [SignedLetter(a, s) for a in labs for s in (1, -1)]
    words = [w for n in range(4) for w in itertools.product(lets, repeat=n)]
    words_oracle = WordOracle(ctx.variety, [x], max_bar=2)
    half = (depth + 1) // 2
    reach = {w: words_oracle.reach(w, half) for w in words}
    agreed = 0
    for a, b in itertools.combinations(words, 2):
        if not reach[a].isdisjoint(reach[b]):
            agreed += 1
            res.check(decide_equal_inv(a, b, ctx.variety, ctx.budget), lambda: f"word oracle certifies {format_word(a)} = {format_word(b)}")
    res.notes["word_pairs_certified"] = agreed
    return res


# -- the perfect case, two ways ------------------------------------------------------


def perfect_crosscheck(ctx: VarietyContext, count: int = 500, size: int = 12) -> SuiteResult:
    from .perfect import Discrepancy

    pctx = VarietyContext(Alphabet(tuple(ctx.alphabet.letters[:2])), Variety.P, ctx.budget, ctx.seed)
    res = SuiteResult("perfect-crosscheck")
    rng = _rng(ctx, "perfect")
    letters = pctx.alphabet.letters
    rewriter = term_oracle(Variety.P)
    equal = 0
    for i in range(count):
        t1 = random_term(rng, letters, rng.randint(1, size))
        if i % 2 == 0:
            t2 = random_rewrite(rng, t1, rewriter, steps=3, max_size=size)
        else:
            t2 = random_term(rng, letters, rng.randint(1, size))
        try:
            verdict = crosscheck(t1, t2, pctx)
            res.check(True, "")
            equal += verdict
            if i % 2 == 0:
                res.check(verdict, lambda: f"rewritten pair called unequal: {format_term(t1)} vs {format_term(t2)}")
        except Discrepancy as exc:
            res.check(False, str(exc))
        if i % 5 == 0:
            res.check(same_shape(t1, pctx), lambda: f"twin graph and closure differ in shape for {format_term(t1)}")
            a, b = eval_p(t1), eval_p(Mul(t1, Star(t2)))
            alg_a, alg_b = evaluate(t1, pctx), evaluate(Mul(t1, Star(t2)), pctx)
            res.check(leq_p(b, a) == element_leq(alg_b, alg_a), lambda: f"order disagrees on {format_term(t1)}")
    res.notes["equal_pairs"] = equal
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "identities": identities,
    "dmap": dmap,
    "morphism": morphism,
    "projection": projection,
    "oracle": oracle,
    "confluence": confluence,
    "eunitary": eunitary,
    "perfect-crosscheck": perfect_crosscheck,
}


def run_suite(name: str, ctx: VarietyContext, count: Optional[int] = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[name]
    return fn(ctx) if count is None else fn(ctx, count=count)
