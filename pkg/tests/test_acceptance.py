"""One check per acceptance criterion; each prints a single PASS/FAIL line."""

import itertools
import random
import time
from fractions import Fraction as F

import pytest

from infsemi import (
    OMEGA,
    EqVerdict,
    FinAlgebra,
    Letter,
    NarrViolated,
    Ordinal,
    PiecewiseSeq,
    PumpedFamily,
    ResidueBlock,
    SeriesInstance,
    SeriesSeq,
    Undefined,
    abeba_hypotheses,
    abebarmk_algebra,
    adjoin_identity,
    audit_suite,
    canonical_expand,
    chain_lattice,
    check_axiom,
    check_nmax,
    commutative_complete_algebras,
    concat,
    concat_seq,
    direct_product,
    endpoints_algebra,
    enumerate_words,
    krob_omega,
    left_projection,
    letter,
    n_failure_witness,
    omega_completion,
    ord_add,
    ord_mul,
    ord_sum_seq,
    pair_tail,
    parse_word,
    power,
    powerset_concat,
    powerset_lift,
    render_word,
    replay,
    series_product,
    series_sum,
    shift_tail,
    string_inflim,
    suite_passes,
    two_sided_absorbing,
    verify_abeba,
    verify_notut,
    word_eq,
)

from conftest import table

RESULTS = []


def record(name, ok, detail=""):
    line = f"criterion={name} result={'PASS' if ok else 'FAIL'}" + (f" {detail}" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def zn(n):
    c = [str(i) for i in range(n)]
    return FinAlgebra(c, table(c, lambda a, b: str((int(a) + int(b)) % n)), {}, name=f"z{n}")


def rand_ordinal(rng, max_terms=3):
    exps = sorted(rng.sample(range(4), rng.randint(0, max_terms)), reverse=True)
    return Ordinal(tuple((Ordinal.of(e), rng.randint(1, 5)) for e in exps))


def rand_nonzero(rng):
    while True:
        a = rand_ordinal(rng)
        if not a.is_zero():
            return a


# -- 1 ---------------------------------------------------------------------------------------


def test_ordinal_laws():
    rng = random.Random(1)
    start = time.perf_counter()
    bad = 0
    for _ in range(1000):
        a, b, c = rand_ordinal(rng), rand_ordinal(rng), rand_ordinal(rng)
        bad += ord_add(ord_add(a, b), c) != ord_add(a, ord_add(b, c))
        bad += ord_mul(ord_mul(a, b), c) != ord_mul(a, ord_mul(b, c))
        bad += ord_mul(a, ord_add(b, c)) != ord_add(ord_mul(a, b), ord_mul(a, c))
        s = PiecewiseSeq([(rand_nonzero(rng), rand_ordinal(rng)) for _ in range(rng.randint(1, 4))])
        bad += ord_mul(a, ord_sum_seq(s)) != ord_sum_seq(s.map(lambda x: ord_mul(a, x)))
    elapsed = time.perf_counter() - start
    record("ordinal-laws", bad == 0 and elapsed < 5, f"triples=1000 failures={bad} seconds={elapsed:.2f}")


# -- 2 ---------------------------------------------------------------------------------------


def rand_finite_word(rng):
    parts = [letter(rng.choice("ab")) for _ in range(rng.randint(1, 3))]
    w = concat(*parts)
    return power(w, rng.randint(2, 3)) if rng.random() < 0.3 else w


def rand_presentation(rng):
    # total length stays below w^2
    runs = []
    for _ in range(rng.randint(1, 4)):
        if rng.random() < 0.5:
            runs.append((rng.choice([1, 2, 3, OMEGA, OMEGA + 2, OMEGA * 2]), rand_finite_word(rng)))
        else:
            base = rand_finite_word(rng)
            runs.append((rng.randint(1, 3), concat(base, power(letter(rng.choice("ab")), OMEGA))))
    return PiecewiseSeq(runs)


def test_word_regrouping():
    rng = random.Random(2)
    bad = 0
    for _ in range(500):
        s = rand_presentation(rng)
        direct = concat_seq(s)
        for _ in range(5):
            raw = list(s.runs)
            # sometimes cut one run in two before grouping
            i = rng.randrange(len(raw))
            length = raw[i][0]
            head = Ordinal.of(1) if length.is_finite() or rng.random() < 0.5 else OMEGA
            if head < length:
                raw = s.split_run(i, head)
            cuts = sorted(rng.sample(range(1, len(raw)), rng.randint(0, len(raw) - 1))) if len(raw) > 1 else []
            groups = s.regroup(cuts, raw)
            grouped = concat_seq(PiecewiseSeq([(1, concat_seq(g)) for g in groups]))
            bad += word_eq(grouped, direct) is not EqVerdict.EQUAL
    record("word-regrouping", bad == 0, f"presentations=500 regroupings=2500 failures={bad}")


# -- 3 ---------------------------------------------------------------------------------------


def test_z2_impossibility():
    z2 = zn(2)
    fails = 0
    replays = 0
    for a, b in itertools.product("01", repeat=2):
        alg = FinAlgebra(z2.carrier, z2.bin, {"0": a, "1": b})
        r = check_axiom(alg, "N_PART")
        fails += r.failed
        replays += r.failed and replay(alg, r.to_json())
    completed = omega_completion(z2)
    reports = audit_suite(completed, budget=10_000)
    ok = fails == 4 and replays == 4 and suite_passes(reports)
    record("z2-impossibility", ok, f"extensions_failing={fails}/4 replayed={replays} completion_suite={'pass' if suite_passes(reports) else 'fail'}")


# -- 4 ---------------------------------------------------------------------------------------


def test_krob_desk_scale():
    count = 0
    errors = []
    for alg in commutative_complete_algebras(3):
        count += 1
        try:
            om = krob_omega(alg)
            assert all(alg.mul(om, a) == om == alg.mul(a, om) for a in alg.carrier)
        except Exception as exc:  # any exception counts against the criterion
            errors.append(f"{alg.to_json()}: {exc}")
    record("krob-desk-scale", count > 0 and not errors, f"algebras={count} exceptions={len(errors)}")


# -- 5 ---------------------------------------------------------------------------------------


def rect_band(n, m):
    c = [f"{i}{j}" for i in range(n) for j in range(m)]
    return FinAlgebra(c, table(c, lambda x, y: x[0] + y[1]), {}, name=f"rect{n}x{m}")


def noncommutative_instances():
    for n in (2, 3, 4):
        S = [chr(ord("a") + i) for i in range(n)]
        for s0 in S[: 2 if n < 4 else 1]:
            yield left_projection(S, s0)
    for n, m in ((1, 2), (2, 1), (2, 2)):
        B = rect_band(n, m)
        for s0, s1 in itertools.islice(itertools.product(B.carrier, repeat=2), 3):
            yield endpoints_algebra(B, s0, s1)


def test_noncommutative_contrast():
    checked = 0
    bad = []
    for inst in noncommutative_instances():
        checked += 1
        passes = suite_passes(audit_suite(inst, budget=1500))
        absorbing = two_sided_absorbing(inst)
        if not passes or absorbing:
            bad.append((inst.describe(), passes, absorbing))
    record("noncommutative-contrast", checked and not bad, f"instances={checked} violations={len(bad)}")


# -- 6 ---------------------------------------------------------------------------------------


def construction_outputs():
    mx = FinAlgebra(["0", "1"], table("01", max), {}, name="max")
    mxw = FinAlgebra(["0", "1"], table("01", max), {"0": "0", "1": "1"}, name="maxw")
    mn3 = FinAlgebra(list("012"), table("012", min), {}, name="min3")
    band = FinAlgebra(["a", "b"], table("ab", lambda x, y: x), {}, name="left-zero")
    seeds = [mx, mxw, mn3, band, zn(2), zn(3), rect_band(2, 2)]
    out = []
    for s in seeds:
        c = omega_completion(s)
        out += [c, adjoin_identity(c), adjoin_identity(s)]
    out += [powerset_concat(zn(2)), powerset_concat(mx), powerset_lift(mxw), powerset_lift(zn(2))]
    out += [direct_product([mxw, mxw]), direct_product([omega_completion(zn(2)), mxw])]
    return out


def test_abeba_notut():
    valid = [a for a in construction_outputs() if suite_passes(audit_suite(a, ("U", "ASSOC3", "N_PART", "WILKE"), budget=600))]
    names = {a.dumps() for a in valid}
    bad = [a.describe() for a in valid if verify_abeba(a).failed or verify_notut(a).failed]
    rmk = abebarmk_algebra()
    hyp = abeba_hypotheses(rmk, "e", "b", "e")
    rmk_ok = not hyp["be=b"] and all(v for k, v in hyp.items() if k != "be=b") and not verify_abeba(rmk).failed
    ok = len(names) >= 20 and not bad and rmk_ok
    record("abeba-notut", ok, f"instances={len(names)} failures={len(bad)} remark_classified={rmk_ok}")


# -- 7 ---------------------------------------------------------------------------------------


def test_canonical_expand_labeling():
    algs = [
        FinAlgebra(["0", "1"], table("01", max), {"0": "0", "1": "1"}),
        omega_completion(zn(2)),
        powerset_concat(zn(2)),
        left_projection(["0", "1"], "1"),
        omega_completion(FinAlgebra(["0", "1"], table("01", lambda x, y: x), {})),
    ]
    elem = {0: "0", 1: "1"}
    elem_ps = {0: "{0}", 1: "{1}"}
    rng = random.Random(7)
    checked = 0
    bad = 0
    for k, alg in enumerate(algs):
        pick = elem_ps if k == 2 else elem
        for n in range(1, 6):
            vals = [pick[rng.randint(0, 1)] for _ in range(n)]
            labels = [f"p{i}" for i in range(n)]
            items = list(labels)
            if n >= 2:
                # the last two labels form an omega block
                items = labels[:-2] + [ResidueBlock((labels[-2], labels[-1]))]
            rank = {l: i for i, l in enumerate(labels)}
            letters = dict(zip(labels, vals))
            expected_parts = [Letter(v) for v in vals[:-2]] if n >= 2 else [Letter(vals[0])]
            if n >= 2:
                expected_parts.append(power(concat(Letter(vals[-2]), Letter(vals[-1])), OMEGA))
            expected = alg.try_evaluate(concat(*expected_parts))
            for perm in itertools.permutations(items):
                checked += 1
                try:
                    got = canonical_expand(alg, perm, letters, key=rank)
                except Undefined:
                    got = None
                bad += got != expected
    record("canonical-expand", bad == 0, f"orderings={checked} failures={bad}")


# -- 8 ---------------------------------------------------------------------------------------


def test_series_instance():
    rng = random.Random(8)
    base = series_product(PiecewiseSeq([(1, SeriesSeq((1,), (1, F(1, 2))))])) == 3
    bad = 0
    for _ in range(1000):
        prefix = tuple(F(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(rng.randint(0, 4)))
        tail = (F(rng.randint(-9, 9), rng.randint(1, 6)), F(rng.randint(-7, 7), 8))
        s = SeriesSeq(prefix, tail)
        total = series_sum(s)
        t = s
        for _ in range(rng.randint(0, 3)):
            t = shift_tail(t)
        if rng.random() < 0.5:
            t = pair_tail(t)
        runs = [(1, SeriesSeq((x,))) for x in t.prefix] + [(1, SeriesSeq((), t.tail))]
        cut = rng.randint(0, len(runs) - 1)
        head = runs[:cut]
        regrouped = [(1, SeriesSeq((series_product(PiecewiseSeq(head)),)))] if head else []
        regrouped.append(runs[-1]) if cut == len(runs) - 1 else regrouped.extend(runs[cut:])
        bad += series_product(PiecewiseSeq(regrouped)) != total
    inst = SeriesInstance()
    alternating = parse_word("(1.'-1')^(w)", symbol=F)
    undefined = inst.try_evaluate(alternating) is None
    try:
        completed = omega_completion(inst)
        narr = "pass"
    except NarrViolated as exc:
        narr = "fail:" + exc.report.witness["word"]
        from infsemi.constructions import CompletedInstance

        completed = CompletedInstance(inst)
    n_part = check_axiom(completed, "N_PART", budget=2000)
    omega_ok = completed.evaluate(alternating) == completed.top and not n_part.failed
    ok = base and bad == 0 and undefined and omega_ok
    detail = (
        f"sum_example={base} regroupings=1000 failures={bad} alternating_undefined={undefined} "
        f"completion_narr={narr} completion_n_part={n_part.verdict}"
    )
    if n_part.failed:
        detail += f" witness={n_part.witness['word']}~{n_part.witness['grouping']}"
    record("series", ok, detail)


# -- 9 ---------------------------------------------------------------------------------------


def test_inflim():
    first = render_word(string_inflim(PumpedFamily("", "ab", "cc"))) == "(a.b)^(w)"
    f = n_failure_witness()
    second = f.direct == ""
    nmax, n = check_nmax(chain_lattice(2), budget=1000)
    ok = first and second and f.replay() and not nmax.failed and n.failed
    record("inflim", ok, f"string_limit={first} empty_limit={second} nmax={nmax.verdict} n_part={n.verdict}")


# -- 10 --------------------------------------------------------------------------------------


def test_composition_order():
    seeds = [
        FinAlgebra(["0", "1"], table("01", max), {}),
        FinAlgebra(["0", "1"], table("01", max), {"0": "0", "1": "1"}),
        zn(2),
        zn(3),
        FinAlgebra(["a", "b"], table("ab", lambda x, y: x), {}),
        FinAlgebra(["0"], {("0", "0"): "0"}, {"0": "0"}),
        FinAlgebra(list("012"), table("012", min), {"0": "0", "1": "1", "2": "2"}),
    ]
    compared = 0
    bad = 0
    for s in seeds:
        one = adjoin_identity(omega_completion(s))
        two = omega_completion(adjoin_identity(s))
        assert set(one.carrier) == set(two.carrier)
        for w in enumerate_words(one.carrier, 3):
            compared += 1
            bad += one.try_evaluate(w) != two.try_evaluate(w)
    record("composition-order", bad == 0, f"seeds={len(seeds)} products={compared} disagreements={bad}")
