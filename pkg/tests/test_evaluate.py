import pytest
from hypothesis import given, reject

from reference import REFERENCE, NAT_REFERENCE
from strategies import functionals, points
from tcont.evaluate import (
    Constant,
    Cyclic,
    FuelExhausted,
    Machine,
    Point,
    QueryLog,
    VExternal,
    VPair,
    apply_to_point,
    evaluate,
    oracle_modulus,
    parse_point,
)
from tcont.parser import parse


def test_rec_zero_rule():
    assert evaluate(parse("rec[N] 5 (fun (k r : N) => succ r) 0")) == 5


def test_rec_succ_rule_unfolds():
    assert evaluate(parse("rec[N] 0 (fun (k r : N) => succ r) 3")) == 3


def test_rec_passes_the_counter():
    # sum of k for k < 5
    src = "rec[N] 0 (fun (k r : N) => rec[N] r (fun (i s : N) => succ s) k) 5"
    assert evaluate(parse(src)) == 10


def test_external_prefix_lookup():
    log = QueryLog()
    m = Machine()
    assert m.apply(VExternal(Point((7,), Constant(0)), log), 0) == 7
    assert log.queried == [0]


def test_pairs_evaluate():
    v = evaluate(parse("pair 1 (fst (pair 2 3))"))
    assert v == VPair(1, 2)


def test_apply_constant_queries_nothing():
    assert apply_to_point(parse("fun (a : N -> N) => 0"), Point((3, 4))) == (0, QueryLog())


def test_apply_head():
    value, log = apply_to_point(parse("fun (a : N -> N) => a 0"), Point((4,)))
    assert value == 4 and log.queried == [0]


def test_apply_nested_logs_multiset():
    alpha = Point(tuple(range(10)), Constant(0))
    value, log = apply_to_point(parse("fun (a : N -> N) => a (a 0)"), alpha)
    assert value == 0 and log.queried == [0, 0]


@pytest.mark.parametrize(
    "src, alpha, expected",
    [
        ("fun (a : N -> N) => 0", Point((9, 9)), 0),
        ("fun (a : N -> N) => a 0", Point((9, 9)), 1),
        ("fun (a : N -> N) => a (succ (a 0))", Point((), Constant(0)), 2),
        ("fun (a : N -> N) => a (a 0)", Point((3,)), 4),
    ],
)
def test_oracle_modulus(src, alpha, expected):
    assert oracle_modulus(parse(src), alpha) == expected


def test_points():
    p = Point((1, 2), Cyclic((7, 8, 9)))
    assert [p(i) for i in range(7)] == [1, 2, 7, 8, 9, 7, 8]
    assert Point((), Constant(3))(100) == 3


def test_with_prefix_keeps_cyclic_phase():
    p = Point((1, 2), Cyclic((7, 8, 9)))
    q = p.with_prefix((0, 0, 0, 0))
    assert [q(i) for i in range(10)] == [0, 0, 0, 0] + [p(i) for i in range(4, 10)]
    r = p.with_prefix((5,))
    assert [r(i) for i in range(8)] == [5] + [p(i) for i in range(1, 8)]


def test_point_literals_round_trip():
    for text in ["[5;const 0]", "[;const 3]", "[1,2,3;cycle 4,5]", "[0;cycle 1]"]:
        assert str(parse_point(text)) == text
    assert parse_point(" [ 1, 2 ; const 0 ] ") == Point((1, 2), Constant(0))


@pytest.mark.parametrize("bad", ["5;const 0", "[1;const]", "[1;cycle ]", "[a;const 0]", "[1;const 1,2]"])
def test_bad_point_literals(bad):
    with pytest.raises(ValueError):
        parse_point(bad)


def test_fuel_exhaustion():
    src = "rec[N] 0 (fun (k r : N) => succ r) 100000"
    with pytest.raises(FuelExhausted):
        evaluate(parse(src), fuel=1000)
    assert evaluate(parse(src)) == 100000


def test_unbounded_naturals():
    # 2^80 by repeated doubling; no wraparound
    src = """
    let double = fun (n : N) => rec[N] 0 (fun (k r : N) => succ (succ r)) n;
    let exp2 = fun (n : N) => rec[N] 1 (fun (k r : N) => double r) n;
    exp2 (succ (succ (succ (succ 0))))
    """
    assert evaluate(parse(src)) == 16
    m = Machine()
    exp2 = m.eval(parse("fun (n : N) => rec[N] 1 (fun (k r : N) => rec[N] r (fun (i s : N) => succ s) r) n"))
    assert m.apply(exp2, 10) == 2**10


class ShadowPoint(Point):
    """Counts lookups independently of the machine's query log."""

    def __call__(self, i):
        object.__getattribute__(self, "calls").append(i)
        return Point.__call__(self, i)


def _shadow(point):
    p = ShadowPoint(point.prefix, point.tail)
    object.__setattr__(p, "calls", [])
    return p


def test_corpus_matches_reference(functionals):
    from tcont.continuity import sample_points

    for alpha in sample_points(30, seed=7):
        for name, f in functionals.items():
            value, _ = apply_to_point(f, alpha)
            assert value == REFERENCE[name](alpha), name


def test_nat_programs_match_reference(all_programs):
    for name, ref in NAT_REFERENCE.items():
        m = Machine()
        fv = m.eval(all_programs[name])
        for n in range(12):
            assert m.apply(fv, n) == ref(n)


def test_query_log_soundness(functionals):
    from tcont.continuity import sample_points

    for alpha in sample_points(10, seed=3):
        for f in functionals.values():
            shadow = _shadow(alpha)
            _, log = apply_to_point(f, shadow)
            assert log.queried == shadow.calls


def test_evaluation_is_deterministic(functionals):
    alpha = Point((2, 1, 3), Cyclic((0, 4)))
    for f in functionals.values():
        first = apply_to_point(f, alpha)
        second = apply_to_point(f, alpha)
        assert first[0] == second[0] and first[1].queried == second[1].queried


def test_progress_on_corpus(functionals):
    # every closed functional applied to a point yields a numeral
    for f in functionals.values():
        value, _ = apply_to_point(f, Point((1, 0, 2)))
        assert isinstance(value, int) and value >= 0


@given(functionals(), points)
def test_oracle_modulus_is_valid_under_perturbation(f, alpha):
    try:
        value, log = apply_to_point(f, alpha, fuel=200_000)
    except FuelExhausted:
        reject()
    m = 0 if log.max() is None else log.max() + 1
    for delta in range(1, 4):
        beta = alpha.with_prefix(alpha.take(m) + tuple((alpha(i) + delta) % 5 for i in range(m, m + 6)))
        assert apply_to_point(f, beta, fuel=10**7)[0] == value
