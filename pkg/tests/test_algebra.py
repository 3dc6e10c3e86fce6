import itertools
import json

import hypothesis
import hypothesis.strategies as st
import pytest

from infsemi import (
    OMEGA,
    AlgebraFormatError,
    ExponentTooLarge,
    FinAlgebra,
    Inconsistent,
    ResidueBlock,
    Undefined,
    canonical_expand,
    check_axiom,
    check_ternary_to_assoc,
    concat,
    endpoints_algebra,
    letter,
    parse_word,
    pi_eval,
    power,
    star,
)

from conftest import table

W = OMEGA
L = letter


def test_pi_eval_examples(max2):
    assert pi_eval(max2, power(concat(L("1"), L("0"), L("1")), W)) == "1"
    assert pi_eval(max2, L("0")) == "0"
    assert pi_eval(max2, parse_word("0^(w^3*2 + w + 4)")) == "0"


def test_pi_eval_lr_first_last():
    S = FinAlgebra(["s0", "s1", "p", "q"], table(["s0", "s1", "p", "q"], lambda a, b: a), {})
    # a left-zero band satisfies abc = ac, so finite products are the first letter
    lr = endpoints_algebra(S, "s0", "s1")
    w = concat(*map(L, ["p", "s1", "q", "q"]))
    assert lr.evaluate(w) == "p"


def test_undefined_carries_witness(max2_classical):
    with pytest.raises(Undefined) as info:
        pi_eval(max2_classical, concat(L("0"), power(L("1"), W)))
    assert info.value.witness == power(L("1"), W)


def test_exponent_too_large(max2):
    with pytest.raises(ExponentTooLarge):
        pi_eval(max2, power(L("1"), W**W))


def test_large_finite_power_uses_cycle():
    z3 = FinAlgebra(["0", "1", "2"], table("012", lambda a, b: str((int(a) + int(b)) % 3)), {})
    assert pi_eval(z3, power(L("1"), 10**12 + 1)) == str((10**12 + 1) % 3)


def test_json_round_trip(max2, tmp_path):
    p = tmp_path / "max.json"
    max2.save(p)
    again = FinAlgebra.load(p)
    assert again == max2
    assert json.loads(p.read_text())["class"] == "complete-on-encodable"


def test_json_rejects_unknown_keys():
    with pytest.raises(AlgebraFormatError):
        FinAlgebra.loads('{"carrier": ["a"], "bin": {}, "omega": {}, "colour": 1}')


def test_json_comma_in_ids():
    alg = FinAlgebra(["{a,b}", "c"], {("{a,b}", "c"): "c"}, {})
    assert FinAlgebra.loads(alg.dumps()).bin[("{a,b}", "c")] == "c"


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(carrier=[], bin={}),
        dict(carrier=["a", "a"], bin={}),
        dict(carrier=["a"], bin={("a", "a"): "b"}),
        dict(carrier=["a"], bin={}, omega={"a": "z"}),
        dict(carrier=["a", "b"], bin={}, sorts=(["a"], [])),
        dict(carrier=["a"], bin={}, completeness_class="huge"),
    ],
)
def test_format_errors(kwargs):
    with pytest.raises(AlgebraFormatError):
        FinAlgebra(**kwargs)


def test_ternary_from_max():
    tern = {t: max(t) for t in itertools.product("01", repeat=3)}
    res = check_ternary_to_assoc("01", tern)
    assert dict(res.algebra.bin) == table("01", max)
    assert res.multiplicity == 1


def test_ternary_constant_first():
    tern = {t: t[0] for t in itertools.product("xy", repeat=3)}
    res = check_ternary_to_assoc("xy", tern)
    # brute force over all 16 binary tables
    cells = [(a, b) for a in "xy" for b in "xy"]
    ok = []
    for vals in itertools.product("xy", repeat=4):
        t = dict(zip(cells, vals))
        if all(t[(t[(a, b)], c)] == tern[(a, b, c)] == t[(a, t[(b, c)])] for a, b, c in tern):
            ok.append(t)
    assert res.multiplicity == len(ok) == 1
    assert dict(res.algebra.bin) == ok[0]


def test_ternary_perturbed_is_inconsistent():
    tern = {t: max(t) for t in itertools.product("01", repeat=3)}
    tern[("0", "0", "1")] = "0"
    with pytest.raises(Inconsistent) as info:
        check_ternary_to_assoc("01", tern)
    assert len(info.value.witness) == 3


def test_canonical_expand_examples(max2):
    free = FinAlgebra(["x", "y", "z"], table("xyz", lambda a, b: a), {})
    got = canonical_expand(free, ["p", "q", "r"], {"p": "x", "q": "y", "r": "z"}, key={"q": 0, "p": 1, "r": 2})
    assert got == pi_eval(free, concat(L("y"), L("x"), L("z")))
    assert canonical_expand(max2, ["p"], {"p": "1"}) == "1"


def test_canonical_expand_residue_blocks(max2):
    # evens then odds of w: order type w*2, versus the natural w ordering
    letters = {"e": "0", "o": "1"}
    natural = canonical_expand(max2, [ResidueBlock(("e", "o"))], letters)
    split = canonical_expand(max2, [ResidueBlock(("e", "o"), "sequential")], letters)
    assert natural == pi_eval(max2, power(concat(L("0"), L("1")), W))
    assert split == pi_eval(max2, concat(power(L("0"), W), power(L("1"), W)))


def test_sorted_typing_makes_products_undefined():
    # x in S_plus with x^w = y in S_omega
    alg = FinAlgebra(["x", "y"], {("x", "x"): "x", ("x", "y"): "y"}, {"x": "y"}, sorts=(["x"], ["y"]))
    assert check_axiom(alg, "OMEGAPP").verdict.value == "PASS"
    assert alg.try_evaluate(parse_word("x^(w).x")) is None
    assert alg.try_evaluate(parse_word("y^(w)")) is None
    assert alg.evaluate(parse_word("x.x^(w)")) == "y"


def test_star_needs_table(max2):
    with pytest.raises(Undefined):
        pi_eval(max2, star(L("1")))
    both = FinAlgebra(["0", "1"], table("01", max), {"0": "0", "1": "1"}, {"0": "0", "1": "1"})
    assert pi_eval(both, concat(star(L("0")), power(L("1"), W))) == "1"


@hypothesis.given(st.lists(st.sampled_from("01"), min_size=1, max_size=12))
def test_finite_words_fold_to_max(xs):
    alg = FinAlgebra(["0", "1"], table("01", max), {})
    assert pi_eval(alg, concat(*map(L, xs))) == max(xs)
