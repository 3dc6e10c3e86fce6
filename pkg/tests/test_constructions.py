import itertools
import random
from fractions import Fraction as F

import hypothesis
import hypothesis.strategies as st
import pytest

from infsemi import (
    OMEGA,
    ConditionStarFails,
    EmptySubset,
    FinAlgebra,
    IdentityFails,
    MonotonePoset,
    NarrViolated,
    NotInflationary,
    PiecewiseSeq,
    SeriesInstance,
    SeriesSeq,
    Undefined,
    adjoin_identity,
    audit_suite,
    check_axiom,
    concat,
    direct_product,
    endpoints_algebra,
    enumerate_words,
    fully_absorbing_candidates,
    inflationary_algebra,
    left_projection,
    letter,
    map_letters,
    omega_completion,
    pair_tail,
    parse_word,
    power,
    powerset_concat,
    powerset_lift,
    quotient_by_map,
    restrict,
    series_product,
    series_sum,
    shift_tail,
    star,
    suite_passes,
    word,
    DEFAULT_EXPONENTS,
)

from conftest import table

W = OMEGA
L = letter
pw = parse_word


def zn(n):
    c = [str(i) for i in range(n)]
    return FinAlgebra(c, table(c, lambda a, b: str((int(a) + int(b)) % n)), {}, name=f"z{n}")


# -- completion ------------------------------------------------------------------------------


def test_completion_of_classical(max2_classical):
    c = omega_completion(max2_classical)
    assert len(c.carrier) == 3
    assert c.evaluate(pw("1^(w)")) == "Omega"
    assert c.completeness_class == "complete-on-encodable"


def test_completion_of_complete(max2):
    c = omega_completion(max2)
    for w in enumerate_words(max2.carrier, 3)[:300]:
        assert c.evaluate(w) == max2.evaluate(w)
    assert c.evaluate(pw("Omega.1^(w)")) == "Omega"


def test_completion_of_z2_passes(z2):
    c = omega_completion(z2)
    assert c.evaluate(pw("1^(w)")) == "Omega"
    assert suite_passes(audit_suite(c, budget=2000))


def test_completion_requires_narr():
    bad = FinAlgebra(["0", "1"], table("01", lambda a, b: str((int(a) + int(b)) % 2)), {"0": "0"})
    with pytest.raises(NarrViolated) as info:
        omega_completion(bad)
    assert info.value.report.failed


# -- identity ---------------------------------------------------------------------------------


def test_adjoin_to_singleton():
    one = FinAlgebra(["a"], {("a", "a"): "a"}, {"a": "a"})
    e1 = adjoin_identity(one)
    assert e1.evaluate(pw("e.a")) == "a"
    assert e1.evaluate(pw("e^(w)")) == "e"
    assert e1.empty_product() == "e"
    assert not check_axiom(e1, "ID").failed


def test_adjoin_deletes_positions():
    free = FinAlgebra(["x", "y", "z"], table("xyz", lambda a, b: a), {})
    e1 = adjoin_identity(free)
    assert e1.evaluate(pw("e.x.e.e.y")) == free.evaluate(pw("x.y"))
    assert e1.evaluate(pw("e.y")) == "y"


def test_old_identity_ceases():
    f_alg = FinAlgebra(["f", "a"], table("fa", lambda x, y: y if x == "f" else x), {"f": "f", "a": "a"}, empty="f")
    assert not check_axiom(f_alg, "ID").failed
    e1 = adjoin_identity(f_alg)
    assert e1.evaluate(pw("e.f")) == "f" and e1.evaluate(pw("f.e")) == "f"
    assert check_axiom(e1, "ID", identity="f").failed


def test_fresh_names_do_not_clash():
    alg = FinAlgebra(["e"], {("e", "e"): "e"}, {"e": "e"})
    assert adjoin_identity(alg).empty_product() == "e'"


# -- power sets --------------------------------------------------------------------------------


def test_powerset_concat_examples():
    z2 = zn(2)
    ps = powerset_concat(z2)
    assert ps.mul("{0}", "{1}") == "{0,1}"
    assert ps.mul("{1}", "{1}") == "{0,1}"
    assert ps.omega["{1}"] == "{0,1}"
    assert fully_absorbing_candidates(ps)["{0,1}"] is None


def test_powerset_concat_singletons_not_homomorphic():
    ps = powerset_concat(zn(2))
    # {1}{1} = {0,1} while {1*1} = {0}
    assert ps.mul("{1}", "{1}") != "{0}"


def test_powerset_concat_brute_force_picks():
    S = zn(3)
    ps = powerset_concat(S)
    for X, Y in itertools.product(["{1}", "{0,2}", "{1,2}"], repeat=2):
        xs, ys = X.strip("{}").split(","), Y.strip("{}").split(",")
        picks = set(xs) | set(ys) | {S.mul(a, b) for a in xs for b in ys}
        assert ps.mul(X, Y) == "{" + ",".join(sorted(picks, key=int)) + "}"


def test_powerset_concat_audit():
    assert suite_passes(audit_suite(powerset_concat(zn(2)), ("U", "ASSOC3", "N_PART", "WILKE"), budget=1500))


def test_powerset_lift_examples(max2):
    pl = powerset_lift(max2)
    assert pl.omega["{0,1}"] == "{0,1}"
    assert pl.evaluate(pw("'{1}'^(w)")) == "{1}"
    assert pl.mul("{}", "{0,1}") == "{}"
    assert pl.omega["{}"] == "{}"


def test_powerset_lift_choice_patterns(max2):
    pl = powerset_lift(max2)
    # choices from {0,1} over w: constant-0 gives 0, anything containing 1 gives 1
    assert pl.evaluate(pw("('{0,1}'.'{0}')^(w)")) == "{0,1}"
    assert pl.evaluate(pw("'{0}'.'{1}'^(w)")) == "{1}"


def test_powerset_lift_singleton_homomorphism(max2):
    pl = powerset_lift(max2)
    for w in enumerate_words(max2.carrier, 3)[:400]:
        lifted = map_letters(w, lambda x: L("{" + x + "}"))
        v = max2.try_evaluate(w)
        assert pl.evaluate(lifted) == ("{" + v + "}" if v is not None else "{}")


def test_powerset_lift_partial():
    pl = powerset_lift(zn(2))
    assert pl.evaluate(pw("'{1}'^(w)")) == "{}"
    assert pl.mul("{0,1}", "{1}") == "{0,1}"


# -- products, restriction, quotients ---------------------------------------------------------


def test_direct_product_examples(max2):
    dp = direct_product([max2, max2])
    assert len(dp.carrier) == 4
    assert dp.omega["(1,0)"] == "(1,0)"
    mixed = direct_product([max2, zn(2)])
    assert mixed.try_evaluate(pw("'(1,1)'^(w)")) is None
    assert mixed.evaluate(pw("'(1,1)'.'(0,1)'")) == "(1,0)"
    assert direct_product([]).carrier == ("()",)


def test_restrict_examples(max2):
    full = restrict(max2, max2.carrier)
    for w in enumerate_words(max2.carrier, 3)[:300]:
        assert full.evaluate(w) == max2.evaluate(w)
    ones = restrict(max2, ["1"])
    assert ones.evaluate(pw("1^(w*2).1")) == "1"
    zeros = restrict(max2, ["0"])
    assert zeros.try_evaluate(pw("0.1.0")) is None
    with pytest.raises(EmptySubset):
        restrict(max2, [])


def test_restrict_infinite_convex_piece():
    z3 = zn(3)
    z3 = FinAlgebra(z3.carrier, z3.bin, {"0": "0", "1": "0", "2": "0"})
    r = restrict(z3, ["0", "1"])
    # the piece 1.1 of (0.1)^w ... is never contiguous, but 1.0.1 sums to 2
    assert r.try_evaluate(pw("(1.0)^(w)")) is None
    assert r.evaluate(pw("0^(w)")) == "0"


@hypothesis.given(st.lists(st.sampled_from("012"), min_size=1, max_size=8))
def test_restrict_matches_convex_enumeration(xs):
    z3 = zn(3)
    r = restrict(z3, ["0", "1"])
    ok = all(
        str(sum(int(x) for x in xs[i:j]) % 3) in ("0", "1")
        for i in range(len(xs))
        for j in range(i + 1, len(xs) + 1)
    )
    v = r.try_evaluate(concat(*map(L, xs)))
    assert (v is not None) == ok
    if ok:
        assert v == z3.evaluate(concat(*map(L, xs)))


def test_quotient_identity_and_collapse(max2):
    q = quotient_by_map(max2, {"0": "0", "1": "1"})
    for w in enumerate_words(max2.carrier, 3)[:200]:
        assert q.try_evaluate(w) == max2.try_evaluate(w)
    one = quotient_by_map(max2, {"0": "*", "1": "*"})
    assert one.elements() == ["*"]
    assert one.evaluate(pw("'*'^(w).'*'")) == "*"


def test_quotient_condition_star_fails():
    z3 = zn(3)
    phi = {"0": "A", "1": "A", "2": "B"}
    with pytest.raises(ConditionStarFails) as info:
        quotient_by_map(z3, phi)
    w1, w2 = info.value.words
    v1, v2 = info.value.values
    assert z3.evaluate(w1) == v1 and z3.evaluate(w2) == v2
    assert phi[v1] != phi[v2]
    assert map_letters(w1, lambda x: L(phi[x])) == map_letters(w2, lambda x: L(phi[x]))


def test_quotient_non_surjective(max2):
    q = quotient_by_map(max2, {"0": "lo", "1": "lo"}, T=["lo", "hi"])
    assert q.evaluate(pw("hi")) == "hi"
    assert q.try_evaluate(pw("hi.lo")) is None


# -- endpoint products ------------------------------------------------------------------------


def test_left_projection_examples():
    lp = left_projection(["a", "b", "c"], "c")
    assert lp.evaluate(pw("a.b^(w)")) == "a"
    assert lp.evaluate(pw("(a.b)^*")) == "c"
    assert lp.evaluate(pw("b")) == "b"
    assert lp.evaluate(pw("a^*.b")) == "c"


def rect_band(n, m):
    c = [f"{i}{j}" for i in range(n) for j in range(m)]
    return FinAlgebra(c, table(c, lambda x, y: x[0] + y[1]), {}, name=f"rect{n}x{m}")


def test_endpoints_examples():
    S = rect_band(2, 2)
    lr = endpoints_algebra(S, "01", "10")
    assert lr.evaluate(pw("('00')^*.('11')^(w)")) == S.mul("01", "10")
    assert lr.evaluate(pw("'11'.('00')^(w)")) == S.mul("11", "10")
    assert lr.evaluate(pw("'01'.'10'")) == S.mul("01", "10")
    assert lr.evaluate(pw("'01'.'00'.'11'")) == S.mul("01", "11")


def test_endpoints_rejects_non_band():
    with pytest.raises(IdentityFails):
        endpoints_algebra(zn(2), "0", "1")


def test_endpoint_shapes_without_min_ignore_letters():
    lp = left_projection(["a", "b"], "b")
    for w in ("a^*", "b^*", "(a.b)^*.a"):
        assert lp.evaluate(pw(w)) == "b"


# -- inflationary maps -------------------------------------------------------------------------


def test_inflationary_stabilizes():
    ia = inflationary_algebra(MonotonePoset.chain(3))
    f = (1, 2, 2)
    assert ia.evaluate(power(L(f), W)) == (2, 2, 2)
    ident = ia.identity()
    assert ia.evaluate(power(L(ident), W * 3 + 1)) == ident


def test_inflationary_diagram_order():
    P = MonotonePoset(["a", "b", "c"], [("a", "b"), ("a", "c")])
    ia = inflationary_algebra(P)
    f = ("b", "b", "c")
    g = ("c", "b", "c")
    # f then g sends a to b, f after g would send a to c
    assert ia.product_seq(PiecewiseSeq([(1, f), (1, g)])) == ("b", "b", "c")
    assert ia.product_seq(PiecewiseSeq([(1, g), (1, f)])) == ("c", "b", "c")


def test_not_inflationary():
    ia = inflationary_algebra(MonotonePoset.chain(2))
    with pytest.raises(NotInflationary):
        ia.evaluate(L((0, 0)))
    with pytest.raises(ValueError):
        MonotonePoset(["a", "b"], [("a", "b"), ("b", "a")])


def test_inflationary_audits():
    ia = inflationary_algebra(MonotonePoset.chain(3))
    assert len(ia.elements()) == 6
    reports = audit_suite(ia, ("U", "ASSOC3", "N_FIN", "N_PART", "NMAX", "NLIM"), budget=1500)
    assert suite_passes(reports)


# -- series --------------------------------------------------------------------------------------


def test_series_examples():
    assert series_product(PiecewiseSeq([(1, SeriesSeq((1,), (1, F(1, 2))))])) == 3
    with pytest.raises(Undefined):
        series_product(PiecewiseSeq([(1, SeriesSeq((1, -1, 1, -1), (1, -1)))]))
    s = SeriesSeq((), (1, F(1, 2)))
    assert series_sum(pair_tail(s)) == series_sum(s) == 2


def test_series_index_types():
    zero = SeriesSeq((0,))
    assert series_product(PiecewiseSeq([(3, SeriesSeq((1, 2))), (W, zero)])) == 9
    with pytest.raises(Undefined):
        series_product(PiecewiseSeq([(W, SeriesSeq((1,)))]))
    with pytest.raises(Undefined):
        series_product(PiecewiseSeq([(1, SeriesSeq((), (1, F(1, 2)))), (1, SeriesSeq((1,)))]))


def test_series_instance():
    inst = SeriesInstance()
    assert inst.evaluate(pw("1.'-1'.1", symbol=F)) == 1
    assert inst.evaluate(pw("'1/2'.0^(w)", symbol=F)) == F(1, 2)
    assert inst.try_evaluate(pw("(1.'-1')^(w)", symbol=F)) is None
    assert inst.try_evaluate(pw("0^(w*2)", symbol=F)) is None


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=8)
ratios = st.fractions(min_value=F(-7, 8), max_value=F(7, 8), max_denominator=8)


@st.composite
def convergent_series(draw):
    prefix = draw(st.lists(rationals, max_size=4))
    tail = draw(st.one_of(st.none(), st.tuples(rationals, ratios)))
    if not prefix and tail is None:
        prefix = [draw(rationals)]
    return SeriesSeq(tuple(prefix), tail)


@hypothesis.given(convergent_series(), st.integers(0, 3))
def test_series_regrouping_invariance(s, shifts):
    total = series_sum(s)
    t = s
    for _ in range(shifts):
        t = shift_tail(t)
    assert series_sum(t) == total
    assert series_sum(pair_tail(t)) == total
    # split the prefix into finite runs followed by the tail as its own run
    runs = [(1, SeriesSeq((x,))) for x in t.prefix]
    if t.tail is not None:
        runs.append((1, SeriesSeq((), t.tail)))
    if runs:
        assert series_product(PiecewiseSeq(runs)) == total
