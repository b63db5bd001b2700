import pytest
from hypothesis import given

from observe import POINTS
from reference import NAT_REFERENCE, REFERENCE
from strategies import functionals as functional_terms
from tcont import corpus
from tcont.continuity import Compiled, check_equivalence, modulus_at, sample_points
from tcont.evaluate import Machine, Point, QueryLog, VExternal
from tcont.parser import parse
from tcont.syntax import (
    BAIRE,
    FST,
    SND,
    SUCC,
    ZERO,
    App,
    Arrow,
    Fst,
    Lam,
    N,
    Pair,
    Prod,
    Rec,
    Snd,
    Succ,
    Var,
    Zero,
    apps,
    arrows,
    lams,
    numeral,
    typecheck,
)
from tcont.translate import (
    BAIRE_TARGET,
    NAT_TARGET,
    PAIRED_TARGET,
    IllTypedSource,
    UnsupportedTarget,
    custom_target,
    generic_element,
    kleisli_ext,
    max_term,
    modulus_term,
    translate_term,
    translate_type,
    value_term,
)

B = Arrow(BAIRE, N)
BB = Prod(B, B)
TARGETS = [BAIRE_TARGET, PAIRED_TARGET, NAT_TARGET]


def run_at(term, alpha):
    m = Machine()
    return m.apply(m.eval(term), VExternal(alpha, QueryLog()))


# ---------------------------------------------------------------- types


@pytest.mark.parametrize(
    "rho, target, expected",
    [
        (N, BAIRE_TARGET, B),
        (Arrow(N, N), BAIRE_TARGET, Arrow(B, B)),
        (Arrow(BAIRE, N), BAIRE_TARGET, Arrow(Arrow(B, B), B)),
        (Prod(N, Arrow(N, N)), BAIRE_TARGET, Prod(B, Arrow(B, B))),
        (N, PAIRED_TARGET, BB),
        (Arrow(N, N), PAIRED_TARGET, Arrow(BB, BB)),
        (N, NAT_TARGET, Arrow(N, N)),
        (Arrow(N, N), NAT_TARGET, Arrow(Arrow(N, N), Arrow(N, N))),
    ],
)
def test_translate_type(rho, target, expected):
    assert translate_type(rho, target) == expected


def test_custom_target_type():
    x = Prod(N, N)
    assert translate_type(N, custom_target(x)) == Arrow(x, N)


# ---------------------------------------------------------------- constants


def test_zero_and_succ_are_the_expected_terms():
    assert translate_term(ZERO) == Lam(BAIRE, ZERO)
    assert translate_term(SUCC) == lams(B, BAIRE, App(SUCC, App(Var(1), Var(0))))


def test_paired_zero():
    assert translate_term(ZERO, PAIRED_TARGET) == Pair(Lam(BAIRE, ZERO), Lam(BAIRE, ZERO))


def test_variables_keep_their_index():
    t = lams(N, N, Var(1))
    assert translate_term(t) == lams(B, B, Var(1))


def test_free_variables_need_a_context():
    with pytest.raises(IllTypedSource):
        translate_term(Var(0))
    assert translate_term(Var(0), ctx=(N,)) == Var(0)
    assert typecheck((B,), translate_term(Var(0), ctx=(N,))) == B


def test_ill_typed_source_is_rejected():
    with pytest.raises(IllTypedSource):
        translate_term(App(ZERO, ZERO))


def test_long_numerals_translate_without_recursion():
    t = numeral(20_000)
    out = translate_term(t)
    assert run_at(out, Point()) == 20_000


# ---------------------------------------------------------------- Kleisli extension


def test_ke_nat_is_literal():
    # fun g f a => g (f a) a
    expected = lams(Arrow(N, B), B, BAIRE, apps(Var(2), App(Var(1), Var(0)), Var(0)))
    assert kleisli_ext(N) == expected


@pytest.mark.parametrize("target", TARGETS, ids=lambda t: t.name)
@pytest.mark.parametrize("rho", [N, Arrow(N, N), Prod(N, N), arrows(N, N, N)], ids=str)
def test_ke_typing(rho, target):
    rho_t = translate_type(rho, target)
    nat_t = translate_type(N, target)
    assert typecheck((), kleisli_ext(rho, target)) == arrows(Arrow(N, rho_t), nat_t, rho_t)


def test_ke_arrow_unfolds_as_expected():
    # hand unfolding of the arrow clause: fun g f x a => g (f a) x a
    hand = lams(Arrow(N, Arrow(B, B)), B, B, BAIRE, apps(Var(3), App(Var(2), Var(0)), Var(1), Var(0)))
    g = parse("fun (k : N) (x : (N -> N) -> N) (a : N -> N) => rec[N] (x a) (fun (i r : N) => succ r) k")
    assert typecheck((), g) == Arrow(N, Arrow(B, B))
    f = App(generic_element(), Lam(BAIRE, numeral(1)))  # reads a1
    xs = [Lam(BAIRE, App(Var(0), numeral(2))), Lam(BAIRE, numeral(3))]
    for x in xs:
        for alpha in POINTS:
            ours = apps(kleisli_ext(Arrow(N, N)), g, f, x)
            theirs = apps(hand, g, f, x)
            assert run_at(ours, alpha) == run_at(theirs, alpha)


def test_paired_ke_combines_moduli_with_max():
    ke = kleisli_ext(N, PAIRED_TARGET)
    omega = generic_element(PAIRED_TARGET)
    # g k = Omega(k^bb) reads index k; f = Omega(3^bb) reads index 3
    g = Lam(N, App(omega, Pair(Lam(BAIRE, Var(1)), Lam(BAIRE, ZERO))))
    three = Pair(Lam(BAIRE, numeral(3)), Lam(BAIRE, ZERO))
    out = apps(ke, g, App(omega, three))
    for alpha in [Point((0, 0, 0, 7, 0, 0, 0, 0, 9)), Point((0, 0, 0, 1, 5))]:
        a3 = alpha(3)
        assert run_at(App(FST, out), alpha) == alpha(a3)
        assert run_at(App(SND, out), alpha) == max(a3 + 1, 4)


# ---------------------------------------------------------------- generic elements


def test_baire_generic_reads_the_computed_index():
    omega = generic_element()
    assert typecheck((), omega) == Arrow(B, B)
    index = Lam(BAIRE, App(Var(0), numeral(1)))  # f(a) = a 1
    assert run_at(App(omega, index), Point((2, 0, 9))) == 2
    assert run_at(App(omega, index), Point((2, 2, 9))) == 9


def test_paired_generic_modulus():
    omega = generic_element(PAIRED_TARGET)
    assert typecheck((), omega) == Arrow(BB, BB)
    arg = Pair(Lam(BAIRE, App(Var(0), ZERO)), Lam(BAIRE, numeral(5)))
    alpha = Point((2, 0, 9))
    out = App(omega, arg)
    assert run_at(App(FST, out), alpha) == 9
    assert run_at(App(SND, out), alpha) == 5  # max(5, 2 + 1)
    assert run_at(App(SND, out), Point((7,))) == 8


def test_nat_generic_is_identity():
    assert generic_element(NAT_TARGET) == Lam(N, Var(0))


def test_custom_target_without_generic():
    target = custom_target(Prod(N, N))
    assert typecheck((), translate_term(parse("fun (n : N) => succ n"), target)) == Arrow(
        Arrow(Prod(N, N), N), Arrow(Prod(N, N), N)
    )
    with pytest.raises(UnsupportedTarget):
        generic_element(target)


def test_custom_target_with_generic_matches_baire():
    target = custom_target(BAIRE, generic=generic_element())
    for name, f in corpus.functionals().items():
        report = check_equivalence(f, sample_points(10), target)
        assert report.ok, name


# ---------------------------------------------------------------- max


def test_max_term_typing_and_shape():
    t = max_term()
    assert typecheck((), t) == arrows(N, N, N)

    def constants(u):
        if isinstance(u, Lam):
            yield from constants(u.body)
        elif isinstance(u, App):
            yield from constants(u.fun)
            yield from constants(u.arg)
        elif not isinstance(u, Var):
            yield type(u)

    assert set(constants(t)) <= {Rec, Succ, Zero}


def test_max_term_on_all_small_pairs():
    m = Machine()
    fn = m.eval(max_term())
    for x in range(64):
        fx = m.apply(fn, x)
        for y in range(64):
            assert m.apply(fx, y) == max(x, y)


# ---------------------------------------------------------------- whole programs


@pytest.mark.parametrize("target", TARGETS, ids=lambda t: t.name)
def test_type_preservation_on_corpus(target, all_programs):
    for name, t in all_programs.items():
        rho = typecheck((), t)
        assert typecheck((), translate_term(t, target)) == translate_type(rho, target), name


def test_translation_is_compositional(all_programs):
    for t in all_programs.values():
        body = t.body if isinstance(t, Lam) else t
        if isinstance(body, App) and not isinstance(body.fun, (Fst, Snd)):
            ctx = (t.domain_type,) if isinstance(t, Lam) else ()
            assert translate_term(body, ctx=ctx) == App(
                translate_term(body.fun, ctx=ctx), translate_term(body.arg, ctx=ctx)
            )


@pytest.mark.parametrize("name", sorted(NAT_REFERENCE))
def test_nat_target_equivalence(name):
    f = corpus.load_all()[name]
    report = check_equivalence(f, list(range(12)), NAT_TARGET)
    assert report.ok
    assert [c.direct for c in report.cases] == [NAT_REFERENCE[name](n) for n in range(12)]


def test_head_translation_pointwise():
    f = corpus.load_all()["head"]
    assert typecheck((), translate_term(f)) == Arrow(Arrow(B, B), B)
    applied = App(translate_term(f), generic_element())
    for alpha in sample_points(20):
        assert run_at(applied, alpha) == alpha(0)


# ---------------------------------------------------------------- modulus terms


def test_modulus_term_examples():
    fs = corpus.load_all()
    for alpha in sample_points(10):
        assert modulus_at(fs["const0"], alpha) == 0
        assert modulus_at(fs["head"], alpha) == 1
    zeros = Point()
    assert modulus_at(fs["nest2"], zeros) == 1
    # a (a 0) at [1,0,...] reads index 1, so the modulus is max(1, a0 + 1) = 2
    assert modulus_at(fs["nest2"], Point((1, 0))) == 2


def test_modulus_term_is_closed_functional(functionals):
    for f in functionals.values():
        assert typecheck((), modulus_term(f)) == Arrow(BAIRE, N)
        assert typecheck((), value_term(f)) == Arrow(BAIRE, N)


def test_modulus_term_rejects_other_types():
    with pytest.raises(IllTypedSource):
        modulus_term(corpus.load_all()["double"])


def test_value_term_agrees_with_reference(functionals):
    for name, f in functionals.items():
        run = Compiled(value_term(f))
        for alpha in sample_points(10):
            assert run(alpha)[0] == REFERENCE[name](alpha), name


# ---------------------------------------------------------------- random programs


@given(functional_terms())
def test_random_equivalence(f):
    assert check_equivalence(f, sample_points(5)).ok


@given(functional_terms())
def test_random_type_preservation(f):
    for target in TARGETS:
        if target.domain == BAIRE:
            assert typecheck((), translate_term(f, target)) == translate_type(typecheck((), f), target)


@given(functional_terms())
def test_random_value_coherence(f):
    direct = Compiled(f)
    paired = Compiled(value_term(f))
    for alpha in sample_points(5):
        assert paired(alpha)[0] == direct(alpha)[0]
