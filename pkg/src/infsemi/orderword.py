"""Transfinite words and scattered labeled orders as terms.

A term is built from ``Empty``, ``Letter``, ``Concat``, ``Power`` (ordinal
exponent) and ``StarPower`` (omega* many copies, in reverse order).  Terms
without ``StarPower`` are ordinal-indexed words; with it they describe
labeled scattered linear orders.  The smart constructors ``concat``,
``power`` and ``star`` keep terms flattened.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Hashable, Iterable, Iterator, Sequence, Union

from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalParseError,
    PiecewiseSeq,
    ord_add,
    ord_cmp,
    ord_divmod,
    ord_mul,
    ord_sub,
    parse_ordinal,
    render_ordinal,
)

__all__ = [
    "Term",
    "Empty",
    "Letter",
    "Concat",
    "Power",
    "StarPower",
    "EMPTY",
    "letter",
    "concat",
    "power",
    "star",
    "word",
    "PositionOutOfRange",
    "BadIndex",
    "WordParseError",
    "EqVerdict",
    "word_length",
    "letter_at",
    "concat_seq",
    "normalize",
    "word_eq",
    "ordered_sum",
    "evaluate_in",
    "is_ordinal_term",
    "has_min",
    "has_max",
    "first_letter",
    "last_letter",
    "letters_of",
    "map_letters",
    "term_size",
    "omega_blocks",
    "render_word",
    "parse_word",
    "block",
    "singletons",
    "flatten_grouping",
    "groupings",
    "iso_variants",
]


class Term:
    __slots__ = ()

    def __str__(self):
        return render_word(self)


@dataclass(frozen=True, repr=False)
class Empty(Term):
    def __repr__(self):
        return "EMPTY"


@dataclass(frozen=True, repr=False)
class Letter(Term):
    symbol: Hashable

    def __repr__(self):
        return f"Letter({self.symbol!r})"


@dataclass(frozen=True, repr=False)
class Concat(Term):
    parts: tuple[Term, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("Concat needs at least two parts")
        for p in self.parts:
            if isinstance(p, (Concat, Empty)) or not isinstance(p, Term):
                raise ValueError(f"Concat part must be a non-empty, non-Concat term: {p!r}")

    def __repr__(self):
        return f"Concat({', '.join(map(repr, self.parts))})"


@dataclass(frozen=True, repr=False)
class Power(Term):
    base: Term
    exponent: Ordinal

    def __post_init__(self):
        if isinstance(self.base, Empty) or not isinstance(self.base, Term):
            raise ValueError("Power base must be a non-empty term")
        if not isinstance(self.exponent, Ordinal) or self.exponent < 2:
            raise ValueError("Power exponent must be an Ordinal >= 2")

    def __repr__(self):
        return f"Power({self.base!r}, {render_ordinal(self.exponent)!r})"


@dataclass(frozen=True, repr=False)
class StarPower(Term):
    base: Term

    def __post_init__(self):
        if isinstance(self.base, Empty) or not isinstance(self.base, Term):
            raise ValueError("StarPower base must be a non-empty term")

    def __repr__(self):
        return f"StarPower({self.base!r})"


EMPTY = Empty()


class PositionOutOfRange(IndexError):
    pass


class BadIndex(IndexError):
    pass


class EqVerdict(Enum):
    EQUAL = "Equal"
    UNEQUAL = "Unequal"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


# -- constructors ------------------------------------------------------------------


def letter(symbol: Hashable) -> Letter:
    return Letter(symbol)


def _as_term(x) -> Term:
    return x if isinstance(x, Term) else Letter(x)


def concat(*parts) -> Term:
    flat: list[Term] = []
    for p in parts:
        p = _as_term(p)
        if isinstance(p, Concat):
            flat.extend(p.parts)
        elif not isinstance(p, Empty):
            flat.append(p)
    if not flat:
        return EMPTY
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def power(base, exponent) -> Term:
    base = _as_term(base)
    exponent = Ordinal.of(exponent)
    if exponent.is_zero() or isinstance(base, Empty):
        return EMPTY
    if exponent == ONE:
        return base
    return Power(base, exponent)


def star(base) -> Term:
    base = _as_term(base)
    if isinstance(base, Empty):
        return EMPTY
    return StarPower(base)


def word(symbols: Iterable[Hashable]) -> Term:
    """Finite word from a sequence of symbols (a string gives its characters)."""
    return concat(*(Letter(s) for s in symbols))


# -- structure ---------------------------------------------------------------------


def is_ordinal_term(t: Term) -> bool:
    if isinstance(t, StarPower):
        return False
    if isinstance(t, Concat):
        return all(is_ordinal_term(p) for p in t.parts)
    if isinstance(t, Power):
        return is_ordinal_term(t.base)
    return True


def has_min(t: Term) -> bool:
    if isinstance(t, Empty) or isinstance(t, StarPower):
        return False
    if isinstance(t, Letter):
        return True
    if isinstance(t, Concat):
        return has_min(t.parts[0])
    return has_min(t.base)


def has_max(t: Term) -> bool:
    if isinstance(t, Empty):
        return False
    if isinstance(t, Letter):
        return True
    if isinstance(t, Concat):
        return has_max(t.parts[-1])
    if isinstance(t, Power):
        return t.exponent.is_successor() and has_max(t.base)
    return has_max(t.base)


def first_letter(t: Term):
    """Label at the minimum position; ``None`` if there is no minimum."""
    while True:
        if isinstance(t, Letter):
            return t.symbol
        if isinstance(t, Concat):
            t = t.parts[0]
        elif isinstance(t, Power):
            t = t.base
        else:
            return None


def last_letter(t: Term):
    """Label at the maximum position; ``None`` if there is no maximum."""
    if not has_max(t):
        return None
    while True:
        if isinstance(t, Letter):
            return t.symbol
        if isinstance(t, Concat):
            t = t.parts[-1]
        else:
            t = t.base


def letters_of(t: Term) -> list:
    """Distinct labels in left-to-right order of first appearance."""
    seen: dict = {}

    def walk(u):
        if isinstance(u, Letter):
            seen.setdefault(u.symbol, None)
        elif isinstance(u, Concat):
            for p in u.parts:
                walk(p)
        elif isinstance(u, (Power, StarPower)):
            walk(u.base)

    walk(t)
    return list(seen)


def map_letters(t: Term, fn: Callable) -> Term:
    if isinstance(t, Letter):
        return _as_term(fn(t.symbol))
    if isinstance(t, Concat):
        return concat(*(map_letters(p, fn) for p in t.parts))
    if isinstance(t, Power):
        return power(map_letters(t.base, fn), t.exponent)
    if isinstance(t, StarPower):
        return star(map_letters(t.base, fn))
    return t


def term_size(t: Term) -> int:
    if isinstance(t, Letter):
        return 1
    if isinstance(t, Concat):
        return sum(term_size(p) for p in t.parts)
    if isinstance(t, (Power, StarPower)):
        return term_size(t.base) + 1
    return 0


# -- length and positions ------------------------------------------------------------


def word_length(t: Term) -> Ordinal:
    if isinstance(t, Empty):
        return ZERO
    if isinstance(t, Letter):
        return ONE
    if isinstance(t, Concat):
        total = ZERO
        for p in t.parts:
            total = ord_add(total, word_length(p))
        return total
    if isinstance(t, Power):
        return ord_mul(word_length(t.base), t.exponent)
    raise TypeError("StarPower terms are not ordinal-indexed; they have no ordinal length")


def letter_at(t: Term, pos) -> Hashable:
    pos = Ordinal.of(pos)
    if not is_ordinal_term(t):
        raise TypeError("letter_at needs an ordinal-indexed word")
    if ord_cmp(pos, word_length(t)) >= 0:
        raise PositionOutOfRange(f"position {pos} outside word of length {word_length(t)}")
    while True:
        if isinstance(t, Letter):
            return t.symbol
        if isinstance(t, Concat):
            for p in t.parts:
                n = word_length(p)
                if ord_cmp(pos, n) < 0:
                    t = p
                    break
                pos = ord_sub(pos, n)
        else:
            _, pos = ord_divmod(pos, word_length(t.base))
            t = t.base


# -- concatenation ----------------------------------------------------------------------


def concat_seq(s: PiecewiseSeq) -> Term:
    """Transfinite concatenation of a run presentation of words."""
    return normalize(concat(*(power(_as_term(w), length) for length, w in s)))


# -- normalization ------------------------------------------------------------------------


def _factors(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Concat):
        return t.parts
    if isinstance(t, Empty):
        return ()
    return (t,)


def _as_power(t: Term) -> tuple[Term, Ordinal]:
    if isinstance(t, Power):
        return t.base, t.exponent
    return t, ONE


def _merge_adjacent(parts: list[Term]) -> list[Term]:
    out: list[Term] = []
    for p in parts:
        if out:
            b1, e1 = _as_power(out[-1])
            b2, e2 = _as_power(p)
            if b1 == b2:
                out[-1] = power(b1, ord_add(e1, e2))
                continue
            prev = out[-1]
            # X^{w*} X  =  X^{w*}
            if isinstance(prev, StarPower) and prev.base == p:
                continue
        out.append(p)
    return out


def _repetition(parts: Sequence[Term]) -> tuple[tuple[Term, ...], int] | None:
    n = len(parts)
    for k in range(1, n // 2 + 1):
        if n % k == 0 and all(parts[i] == parts[i % k] for i in range(n)):
            return tuple(parts[:k]), n // k
    return None


def _rotate_into_powers(parts: list[Term]) -> list[Term]:
    """u (v u)^w  ->  (u v)^w, matching the longest possible u."""
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(parts):
            if not (isinstance(p, Power) and p.exponent == OMEGA):
                continue
            inner = _factors(p.base)
            for j in range(min(i, len(inner) - 1), 0, -1):
                u = inner[-j:]
                if tuple(parts[i - j : i]) == u:
                    rotated = concat(*u, *inner[:-j])
                    parts[i - j : i + 1] = [Power(rotated, OMEGA)]
                    changed = True
                    break
            if changed:
                break
    return parts


def _least_rotation(parts: tuple[Term, ...]) -> tuple[Term, ...]:
    rots = [parts[i:] + parts[:i] for i in range(len(parts))]
    return min(rots, key=lambda r: render_word(concat(*r)))


def _normalize_step(t: Term) -> Term:
    if isinstance(t, (Empty, Letter)):
        return t
    if isinstance(t, Power):
        base = _normalize_step(t.base)
        if isinstance(base, Power):
            return power(base.base, ord_mul(base.exponent, t.exponent))
        rep = _repetition(_factors(base))
        if rep is not None:
            block, k = rep
            return power(concat(*block), ord_mul(Ordinal.of(k), t.exponent))
        return power(base, t.exponent)
    if isinstance(t, StarPower):
        base = _normalize_step(t.base)
        rep = _repetition(_factors(base))
        if rep is not None:
            base = concat(*rep[0])
        return star(base)
    parts = [_normalize_step(p) for p in t.parts]
    flat = list(_factors(concat(*parts)))
    flat = _merge_adjacent(flat)
    flat = _rotate_into_powers(flat)
    rep = _repetition(flat)
    if rep is not None and len(flat) > 1:
        return power(concat(*rep[0]), rep[1])
    # zeta-shaped X^{w*} X^w: pick the least rotation of the period
    for i in range(len(flat) - 1):
        a, b = flat[i], flat[i + 1]
        if isinstance(a, StarPower) and isinstance(b, Power) and b.exponent == OMEGA and a.base == b.base:
            period = _least_rotation(_factors(a.base))
            base = concat(*period)
            flat[i : i + 2] = [StarPower(base), Power(base, OMEGA)]
    return concat(*flat)


def normalize(t: Term) -> Term:
    """Rewrite to a fixpoint: flatten, merge equal neighbours into powers,
    fuse nested powers, and rotate ``u (v u)^w`` into ``(u v)^w``."""
    while True:
        nxt = _normalize_step(t)
        if nxt == t:
            return t
        t = nxt


# -- equality -------------------------------------------------------------------------------


def _primitive_root(s: tuple) -> tuple:
    n = len(s)
    for k in range(1, n + 1):
        if n % k == 0 and s == s[:k] * (n // k):
            return s[:k]
    return s


class _Period(tuple):
    """An omega-segment: the period repeated omega times."""


def _segments(t: Term) -> list:
    """Flatten a word of length < w^2 into finite strings and ``_Period`` items."""
    if isinstance(t, Empty):
        return []
    if isinstance(t, Letter):
        return [(t.symbol,)]
    if isinstance(t, Concat):
        out = []
        for p in t.parts:
            out.extend(_segments(p))
        return out
    if isinstance(t, Power):
        inner = _segments(t.base)
        e = t.exponent
        if e.is_finite():
            return inner * int(e)
        if not word_length(t.base).is_finite() or e.degree() != ONE:
            raise ValueError("word too long for block decomposition")
        period = tuple(x for seg in inner for x in seg)
        return [_Period(period)] * e.terms[0][1] + [period] * e.finite_part()
    raise TypeError("block decomposition needs an ordinal-indexed word")


def omega_blocks(t: Term) -> tuple[tuple[tuple[tuple, tuple], ...], tuple]:
    """Canonical ultimately periodic description of a word of length < w^2.

    Returns ``(blocks, tail)`` where each block ``(prefix, period)`` covers
    one omega-segment and ``tail`` is the final finite string.  Two words of
    length < w^2 are equal iff these descriptions are equal.
    """
    blocks = []
    pending: list = []
    for seg in _segments(t):
        if isinstance(seg, _Period):
            prefix, period = tuple(pending), _primitive_root(tuple(seg))
            # p.x.(q.x)^w = p.(x.q)^w
            while prefix and prefix[-1] == period[-1]:
                prefix = prefix[:-1]
                period = period[-1:] + period[:-1]
            blocks.append((prefix, period))
            pending = []
        else:
            pending.extend(seg)
    return tuple(blocks), tuple(pending)


def _sample_positions(length: Ordinal) -> list[Ordinal]:
    """Small positions plus positions just after each CNF block boundary."""
    cands = {Ordinal.of(n) for n in range(20)}
    acc = ZERO
    for exp, coef in length.terms:
        for _ in range(coef):
            for k in range(6):
                cands.add(ord_add(acc, Ordinal.of(k)))
            if exp.is_finite():
                for d in range(1, int(exp)):
                    for j in range(1, 4):
                        for k in range(3):
                            step = Ordinal(((Ordinal.of(d), j),))
                            cands.add(ord_add(ord_add(acc, step), Ordinal.of(k)))
            acc = ord_add(acc, Ordinal(((exp, 1),)))
    return sorted(p for p in cands if p < length)


_OMEGA_SQ = Ordinal(((Ordinal.of(2), 1),))


def word_eq(t1: Term, t2: Term) -> EqVerdict:
    """Extensional equality of ordinal words.

    ``EQUAL`` and ``UNEQUAL`` are always sound.  Below length w^2 the answer
    is exact; above it, ``EQUAL`` needs identical normal forms.
    """
    if not (is_ordinal_term(t1) and is_ordinal_term(t2)):
        n1, n2 = normalize(t1), normalize(t2)
        return EqVerdict.EQUAL if n1 == n2 else EqVerdict.UNKNOWN
    len1, len2 = word_length(t1), word_length(t2)
    if len1 != len2:
        return EqVerdict.UNEQUAL
    n1, n2 = normalize(t1), normalize(t2)
    if n1 == n2:
        return EqVerdict.EQUAL
    if len1 < _OMEGA_SQ:
        return EqVerdict.EQUAL if omega_blocks(n1) == omega_blocks(n2) else EqVerdict.UNEQUAL
    for pos in _sample_positions(len1):
        if letter_at(n1, pos) != letter_at(n2, pos):
            return EqVerdict.UNEQUAL
    return EqVerdict.UNKNOWN


# -- ordered sums and evaluation ---------------------------------------------------------------


def ordered_sum(parts: Sequence[Term], shape: Term) -> Term:
    """Substitute ``parts[i]`` for every leaf labeled ``i`` of ``shape``."""

    def pick(i):
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < len(parts):
            raise BadIndex(f"shape leaf {i!r} does not index the {len(parts)} parts")
        return parts[i]

    return normalize(map_letters(shape, pick))


def evaluate_in(t: Term, alg, embed: Callable | dict):
    """Fold a labeled order into an algebra through the letter embedding.

    Raises ``Undefined`` (from the algebra module) when the algebra leaves
    a needed product undefined.
    """
    lookup = embed.__getitem__ if isinstance(embed, dict) else embed
    return alg.evaluate(map_letters(t, lookup))


# -- text syntax ------------------------------------------------------------------------------------

_BARE = re.compile(r"[A-Za-z0-9_]+\Z")


def _render_symbol(sym) -> str:
    if isinstance(sym, Term):
        return "[" + render_word(sym) + "]"
    s = str(sym)
    if _BARE.match(s):
        return s
    return "'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'"


def _render_exp(e: Ordinal) -> str:
    return "^(" + render_ordinal(e) + ")"


def render_word(t: Term) -> str:
    if isinstance(t, Empty):
        return "()"
    if isinstance(t, Letter):
        return _render_symbol(t.symbol)
    if isinstance(t, Concat):
        return ".".join(render_word(p) for p in t.parts)
    base = t.base
    inner = render_word(base)
    if isinstance(base, Concat):
        inner = "(" + inner + ")"
    if isinstance(t, Power):
        return inner + _render_exp(t.exponent)
    return inner + "^*"


class WordParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.text = text
        self.pos = pos


class _WordParser:
    def __init__(self, text: str, symbol: Callable[[str], Hashable]):
        self.text = text
        self.pos = 0
        self.symbol = symbol

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise WordParseError(f"expected {ch!r}", self.text, self.pos)
        self.pos += 1

    def parse(self) -> Term:
        t = self.word()
        if self.peek():
            raise WordParseError("trailing input", self.text, self.pos)
        return t

    def word(self) -> Term:
        parts = [self.factor()]
        while self.peek() == ".":
            self.pos += 1
            parts.append(self.factor())
        return concat(*parts)

    def factor(self) -> Term:
        t = self.atom()
        while self.peek() == "^":
            self.pos += 1
            nxt = self.peek()
            if nxt == "*":
                self.pos += 1
                t = star(t)
            elif nxt == "(":
                start = self.pos + 1
                depth, i = 0, self.pos
                while i < len(self.text):
                    if self.text[i] == "(":
                        depth += 1
                    elif self.text[i] == ")":
                        depth -= 1
                        if depth == 0:
                            break
                    i += 1
                else:
                    raise WordParseError("unbalanced exponent", self.text, self.pos)
                try:
                    e = parse_ordinal(self.text[start:i])
                except OrdinalParseError as err:
                    raise WordParseError(f"bad exponent ({err})", self.text, start + err.pos) from None
                self.pos = i + 1
                t = power(t, e)
            else:
                raise WordParseError("expected '(' or '*' after '^'", self.text, self.pos)
        return t

    def atom(self) -> Term:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                return EMPTY
            t = self.word()
            self.expect(")")
            return t
        if ch == "[":
            self.pos += 1
            t = self.word()
            self.expect("]")
            return Letter(t)
        if ch == "'":
            self.pos += 1
            out = []
            while self.pos < len(self.text) and self.text[self.pos] != "'":
                if self.text[self.pos] == "\\":
                    self.pos += 1
                out.append(self.text[self.pos])
                self.pos += 1
            if self.pos >= len(self.text):
                raise WordParseError("unterminated quoted letter", self.text, self.pos)
            self.pos += 1
            return Letter(self.symbol("".join(out)))
        m = re.compile(r"[A-Za-z0-9_]+").match(self.text, self.pos)
        if not m:
            raise WordParseError("expected a letter, '(' or '['", self.text, self.pos)
        self.pos = m.end()
        return Letter(self.symbol(m.group()))


def parse_word(text: str, symbol: Callable[[str], Hashable] = str) -> Term:
    """Parse ``a.(b.c)^(w).d^*`` style words; ``[..]`` makes a block letter."""
    return _WordParser(text, symbol).parse()


# -- groupings and isomorphic variants -------------------------------------------------------
#
# A grouping of a word ``t`` is an outer term whose letters are blocks: each
# ``Letter(block)`` stands for a convex piece of ``t``, and substituting the
# blocks back gives ``t`` again.  This is the finite face of an order
# preserving surjection onto the outer index.

_SMALL_DIVISORS = (Ordinal.of(2), Ordinal.of(3), OMEGA)


def block(t: Term) -> Letter:
    return Letter(t)


def singletons(t: Term) -> Term:
    """The finest grouping: every position is its own block."""
    return map_letters(t, lambda s: Letter(Letter(s)))


def flatten_grouping(g: Term) -> Term:
    """Substitute every block back into the outer term."""
    return map_letters(g, lambda blk: blk)


def _compositions(items: Sequence) -> Iterator[list[tuple]]:
    n = len(items)
    for mask in range(1 << (n - 1)):
        groups, cur = [], [items[0]]
        for i in range(1, n):
            if mask >> (i - 1) & 1:
                groups.append(tuple(cur))
                cur = []
            cur.append(items[i])
        groups.append(tuple(cur))
        yield groups


def _exponent_splits(alpha: Ordinal) -> list[tuple[Ordinal, Ordinal]]:
    """Pairs (beta, gamma), both nonzero, with beta + gamma = alpha."""
    cands: set[Ordinal] = {Ordinal.of(1), Ordinal.of(2)}
    acc = ZERO
    for exp, coef in alpha.terms:
        for c in range(1, coef + 1):
            cands.add(ord_add(acc, Ordinal(((exp, c),))))
        acc = ord_add(acc, Ordinal(((exp, coef),)))
    out = []
    for beta in sorted(cands):
        if ZERO < beta < alpha:
            out.append((beta, ord_sub(alpha, beta)))
    return out


def _divisors(alpha: Ordinal) -> list[tuple[Ordinal, Ordinal]]:
    """Pairs (d, delta) with d >= 2, delta >= 2 and d * delta = alpha."""
    out = []
    cands = set(_SMALL_DIVISORS)
    if alpha.is_finite():
        cands |= {Ordinal.of(k) for k in range(2, int(alpha))}
    for d in sorted(cands):
        if d >= alpha:
            continue
        q, r = ord_divmod(alpha, d)
        if r.is_zero() and q >= 2:
            out.append((d, q))
    return out


def groupings(t: Term, depth: int = 2) -> list[Term]:
    """A fixed family of groupings of ``t``: consecutive compositions of
    factors, exponent splits, constant-size blocks of powers, shifted
    blocks ``x (y x)^w``, their omega* mirrors, and the same applied inside
    a factor or a power base (up to ``depth`` levels)."""
    out: dict[Term, None] = {}

    def add(g: Term):
        out.setdefault(g, None)

    if isinstance(t, Empty):
        return []
    add(Letter(t))
    add(singletons(t))
    if isinstance(t, Concat):
        parts = t.parts
        for groups in _compositions(parts):
            add(concat(*(Letter(concat(*grp)) for grp in groups)))
        if depth > 0:
            for i, p in enumerate(parts):
                for g in groupings(p, depth - 1):
                    add(concat(*(singletons(q) for q in parts[:i]), g, *(singletons(q) for q in parts[i + 1 :])))
    elif isinstance(t, Power):
        b, alpha = t.base, t.exponent
        if alpha.is_finite():
            for groups in _compositions([b] * int(alpha)):
                add(concat(*(Letter(concat(*grp)) for grp in groups)))
        for beta, gamma in _exponent_splits(alpha):
            add(concat(Letter(power(b, beta)), Letter(power(b, gamma))))
            add(concat(Letter(power(b, beta)), power(Letter(b), gamma)))
        for d, delta in _divisors(alpha):
            add(power(Letter(power(b, d)), delta))
        if alpha == OMEGA:
            parts = _factors(b)
            for i in range(1, len(parts)):
                u, v = concat(*parts[:i]), concat(*parts[i:])
                add(concat(Letter(u), power(Letter(concat(v, u)), OMEGA)))
        if depth > 0:
            for g in groupings(b, depth - 1):
                add(power(g, alpha))
    elif isinstance(t, StarPower):
        b = t.base
        add(concat(Letter(t), Letter(b)))
        add(concat(star(Letter(b)), Letter(b)))
        for k in (2, 3):
            add(star(Letter(power(b, k))))
        parts = _factors(b)
        for i in range(1, len(parts)):
            u, v = concat(*parts[:i]), concat(*parts[i:])
            add(concat(star(Letter(concat(v, u))), Letter(v)))
        if depth > 0:
            for g in groupings(b, depth - 1):
                add(star(g))
    return list(out)


def _local_variants(t: Term) -> list[Term]:
    out: list[Term] = []
    if isinstance(t, Power):
        b, alpha = t.base, t.exponent
        if alpha.is_finite():
            out.append(concat(*([b] * int(alpha))))
        if isinstance(b, Power):
            out.append(power(b.base, ord_mul(b.exponent, alpha)))
        for d, delta in _divisors(alpha):
            out.append(Power(power(b, d), delta))
        for beta, gamma in _exponent_splits(alpha):
            out.append(concat(power(b, beta), power(b, gamma)))
        if alpha == OMEGA:
            parts = _factors(b)
            for i in range(1, len(parts)):
                u, v = concat(*parts[:i]), concat(*parts[i:])
                out.append(concat(u, power(concat(v, u), OMEGA)))
    elif isinstance(t, StarPower):
        b = t.base
        out.append(concat(t, b))
        out.append(star(power(b, 2)))
        parts = _factors(b)
        for i in range(1, len(parts)):
            u, v = concat(*parts[:i]), concat(*parts[i:])
            out.append(concat(star(concat(v, u)), v))
    elif isinstance(t, Concat):
        parts = t.parts
        for i in range(1, len(parts)):
            p = parts[i]
            # u.(v.u)^w  ->  (u.v)^w
            if isinstance(p, Power) and p.exponent == OMEGA:
                inner = _factors(p.base)
                for j in range(1, min(i, len(inner) - 1) + 1):
                    if tuple(parts[i - j : i]) == inner[-j:]:
                        rot = Power(concat(*inner[-j:], *inner[:-j]), OMEGA)
                        out.append(concat(*parts[: i - j], rot, *parts[i + 1 :]))
            # X^* . X  ->  X^*
            prev = parts[i - 1]
            if isinstance(prev, StarPower) and prev.base == p:
                out.append(concat(*parts[:i], *parts[i + 1 :]))
            # x . x  ->  x^2
            if prev == p:
                out.append(concat(*parts[: i - 1], power(p, 2), *parts[i + 1 :]))
    return out


def iso_variants(t: Term, limit: int = 40) -> list[Term]:
    """Other terms for the same labeled order, each one rewrite away from ``t``
    (the rewrite may happen inside any subterm), plus the normal form."""
    out: dict[Term, None] = {}

    def walk(u: Term, rebuild: Callable[[Term], Term]):
        for v in _local_variants(u):
            out.setdefault(rebuild(v), None)
        if isinstance(u, Concat):
            for i, p in enumerate(u.parts):
                walk(p, lambda v, i=i, u=u: rebuild(concat(*u.parts[:i], v, *u.parts[i + 1 :])))
        elif isinstance(u, Power):
            walk(u.base, lambda v, u=u: rebuild(power(v, u.exponent)))
        elif isinstance(u, StarPower):
            walk(u.base, lambda v: rebuild(star(v)))

    out.setdefault(normalize(t), None)
    walk(t, lambda v: v)
    out.pop(t, None)
    return list(out)[:limit]
