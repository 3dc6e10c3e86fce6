import hypothesis.strategies as st
import pytest

from infsemi import FinAlgebra, Ordinal, PiecewiseSeq, letter, power, concat, star, OMEGA


def ordinals_below_ww(max_terms=3, max_exp=3, max_coef=4):
    """CNF ordinals below w^w."""

    @st.composite
    def build(draw):
        exps = draw(st.lists(st.integers(0, max_exp), max_size=max_terms, unique=True))
        exps.sort(reverse=True)
        return Ordinal(tuple((Ordinal.of(e), draw(st.integers(1, max_coef))) for e in exps))

    return build()


def nonzero_ordinals(**kw):
    return ordinals_below_ww(**kw).filter(lambda a: not a.is_zero())


def piecewise(values, max_runs=4):
    run = st.tuples(nonzero_ordinals(max_terms=2, max_exp=2), values)
    return st.lists(run, min_size=1, max_size=max_runs).map(PiecewiseSeq)


def words(alphabet="ab", max_depth=3, with_star=False):
    exps = st.sampled_from([2, 3, OMEGA, OMEGA + 1, OMEGA * 2, OMEGA**2])
    leaves = st.sampled_from(list(alphabet)).map(letter)

    def extend(inner):
        opts = [
            st.lists(inner, min_size=2, max_size=3).map(lambda ps: concat(*ps)),
            st.tuples(inner, exps).map(lambda p: power(*p)),
        ]
        if with_star:
            opts.append(inner.map(star))
        return st.one_of(*opts)

    return st.recursive(leaves, extend, max_leaves=max_depth * 2)


def table(carrier, op):
    return {(a, b): op(a, b) for a in carrier for b in carrier}


@pytest.fixture
def max2():
    return FinAlgebra(["0", "1"], table("01", max), {"0": "0", "1": "1"}, name="max", completeness_class="complete-on-encodable")


@pytest.fixture
def max2_classical():
    return FinAlgebra(["0", "1"], table("01", max), {}, name="max-classical")


@pytest.fixture
def z2():
    return FinAlgebra(["0", "1"], table("01", lambda a, b: str((int(a) + int(b)) % 2)), {}, name="z2")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
