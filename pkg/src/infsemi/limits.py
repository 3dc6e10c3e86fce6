"""Inferior limits on finite meet-semilattices and on strings.

The inferior limit of ``q_0, q_1, ...`` is the join over ``i`` of the meets
of the tails ``q_h, h >= i``.  On an index with a maximum it is the last
term.  Otherwise, over a finite alphabet, the tail meets stabilise at the
meet of the letters that occur cofinally, which is what is computed here.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Hashable, Mapping, Sequence

from .algebra import InfSemigroup, Undefined
from .audit import CheckReport, check_axiom, check_instance
from .ordinal import OMEGA, PiecewiseSeq
from .orderword import (
    EMPTY,
    Concat,
    Empty,
    Letter,
    Power,
    StarPower,
    Term,
    concat,
    concat_seq,
    has_max,
    last_letter,
    letters_of,
    map_letters,
    normalize,
    power,
    word,
)

__all__ = [
    "FiniteMeetSemilattice",
    "chain_lattice",
    "cofinal_letters",
    "inflim_word",
    "inflim_lattice",
    "suffix_meets",
    "InflimInstance",
    "PumpedFamily",
    "lcp",
    "string_inflim",
    "truncation_limit",
    "NFailure",
    "n_failure_witness",
    "check_nmax",
]


class FiniteMeetSemilattice:
    """A finite set with an idempotent, commutative, associative meet."""

    def __init__(self, elements: Sequence[Hashable], meet: Mapping[tuple, Hashable] | Callable):
        self.elements = list(elements)
        if callable(meet):
            meet = {(a, b): meet(a, b) for a in self.elements for b in self.elements}
        self.table = dict(meet)
        E = self.elements
        for a in E:
            if self.table.get((a, a)) != a:
                raise ValueError(f"meet is not idempotent at {a!r}")
            for b in E:
                if (a, b) not in self.table or self.table[(a, b)] not in E:
                    raise ValueError(f"meet({a!r}, {b!r}) missing or outside the set")
                if self.table[(a, b)] != self.table[(b, a)]:
                    raise ValueError(f"meet is not commutative at {a!r}, {b!r}")
                for c in E:
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)):
                        raise ValueError(f"meet is not associative at {a!r}, {b!r}, {c!r}")

    def meet(self, a, b):
        return self.table[(a, b)]

    def leq(self, a, b) -> bool:
        return self.meet(a, b) == a

    def meet_all(self, xs):
        return reduce(self.meet, xs)

    def join_chain(self, xs):
        xs = list(xs)
        top = xs[0]
        for x in xs[1:]:
            if self.leq(top, x):
                top = x
            elif not self.leq(x, top):
                raise ValueError("join_chain needs a chain")
        return top


def chain_lattice(n: int) -> FiniteMeetSemilattice:
    return FiniteMeetSemilattice(list(range(n)), min)


def cofinal_letters(t: Term) -> list:
    """Letters occurring at positions beyond every point of an index with no maximum."""
    if isinstance(t, (Empty, Letter)):
        return []
    if isinstance(t, Concat):
        return cofinal_letters(t.parts[-1])
    if isinstance(t, StarPower):
        return cofinal_letters(t.base)
    if t.exponent.is_limit():
        return letters_of(t.base)
    return cofinal_letters(t.base)


def inflim_word(t: Term, meet: Callable[[Hashable, Hashable], Hashable]):
    if isinstance(t, Empty):
        raise Undefined(t, "empty index")
    if has_max(t):
        return last_letter(t)
    return reduce(meet, cofinal_letters(t))


def inflim_lattice(Q: FiniteMeetSemilattice, s: PiecewiseSeq | Term):
    """Inferior limit of a run presentation (values may be elements or
    words of elements) or of a word term."""
    if isinstance(s, PiecewiseSeq):
        s = concat_seq(s.map(lambda v: v if isinstance(v, Term) else Letter(v)))
    return inflim_word(s, Q.meet)


def suffix_meets(Q: FiniteMeetSemilattice, s: PiecewiseSeq) -> list:
    """Meets of the tails starting at each run boundary; a nondecreasing chain."""
    vals = [sorted(set(letters_of(v)), key=repr) if isinstance(v, Term) else [v] for _, v in s]
    return [Q.meet_all([x for vs in vals[i:] for x in vs]) for i in range(len(vals))]


class InflimInstance(InfSemigroup):
    """The inferior limit offered as a candidate infinitary product."""

    supports_star = True
    supports_omega = True

    def __init__(self, Q: FiniteMeetSemilattice, name: str = ""):
        self.Q = Q
        self.name = name or f"inflim({len(Q.elements)}-element semilattice)"

    def elements(self):
        return list(self.Q.elements)

    def evaluate(self, term):
        for x in letters_of(term):
            if x not in self.Q.elements:
                raise Undefined(Letter(x), "letter outside the semilattice")
        return inflim_word(term, self.Q.meet)


# -- strings ------------------------------------------------------------------------------------------


def lcp(a: str, b: str) -> str:
    return os.path.commonprefix([a, b])


@dataclass(frozen=True)
class PumpedFamily:
    """The strings u v^n w for n = 0, 1, 2, ..."""

    u: str = ""
    v: str = ""
    w: str = ""

    def member(self, n: int) -> str:
        return self.u + self.v * n + self.w

    @classmethod
    def parse(cls, text: str) -> "PumpedFamily":
        parts = [p.strip() for p in text.split("|")]
        if len(parts) != 3:
            raise ValueError("expected 'u | v | w'")
        return cls(*parts)


def string_inflim(f: PumpedFamily) -> Term:
    """The common prolongation of the tails, as a word term."""
    if not f.v:
        return normalize(word(f.u + f.w))
    return normalize(concat(word(f.u), power(word(f.v), OMEGA)))


def truncation_limit(f: PumpedFamily, start: int, stop: int) -> str:
    """Longest common prefix of the members start..stop."""
    return reduce(lcp, (f.member(n) for n in range(start, stop + 1)))


# -- (N) fails for the inferior limit ----------------------------------------------------------------


@dataclass(frozen=True)
class NFailure:
    sequence: Term
    grouping: Term
    direct: str
    groups: tuple[str, ...]
    grouped: str

    def replay(self) -> bool:
        direct = inflim_word(self.sequence, lcp)
        outer = map_letters(self.grouping, lambda g: Letter(inflim_word(g, lcp)))
        groups = tuple(dict.fromkeys(letters_of(outer)))
        grouped = inflim_word(outer, lcp)
        return (direct, groups, grouped) == (self.direct, self.groups, self.grouped) and direct != grouped


def n_failure_witness() -> NFailure:
    """The strings a, b, a, b, ... grouped in consecutive pairs."""
    pair = concat(Letter("a"), Letter("b"))
    seq = power(pair, OMEGA)
    grouping = power(Letter(pair), OMEGA)
    direct = inflim_word(seq, lcp)
    group_val = inflim_word(pair, lcp)
    grouped = inflim_word(power(Letter(group_val), OMEGA), lcp)
    return NFailure(seq, grouping, direct, (group_val,), grouped)


def check_nmax(Q: FiniteMeetSemilattice, budget: int = 1_000, seed: int = 0) -> tuple[CheckReport, CheckReport]:
    """Audit (Nmax) and full (N) for the inferior limit on ``Q``.

    The first report is expected to pass and the second to fail.
    """
    inst = InflimInstance(Q)
    nmax = check_axiom(inst, "NMAX", budget, seed)
    # the alternating pair grouping first, then the generic audit
    for x, y in itertools.permutations(Q.elements, 2):
        pair = concat(Letter(x), Letter(y))
        n = check_instance(inst, "N_PART", (power(pair, OMEGA), power(Letter(pair), OMEGA)))
        if n.failed:
            return nmax, n
    return nmax, check_axiom(inst, "N_PART", budget, seed)
