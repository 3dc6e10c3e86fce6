"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
decreasing exponents (themselves ordinals) and positive integer
coefficients.  Equality is syntactic on the term tuple.
"""

from __future__ import annotations

import re
from typing import Callable, Generic, Iterable, Iterator, Sequence, TypeVar, Union

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "PiecewiseSeq",
    "OrdinalParseError",
    "ord_cmp",
    "ord_add",
    "ord_mul",
    "ord_pow",
    "ord_sub",
    "ord_divmod",
    "ord_sum_seq",
    "ord_prod_seq",
    "omega_power",
    "parse_ordinal",
    "render_ordinal",
]

IntoOrdinal = Union["Ordinal", int]


class OrdinalParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.text = text
        self.pos = pos


class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple["Ordinal", int]] = ()):
        terms = tuple(terms)
        prev = None
        for exp, coef in terms:
            if not isinstance(exp, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {exp!r}")
            if not isinstance(coef, int) or coef < 1:
                raise ValueError(f"coefficient must be a positive int, got {coef!r}")
            if prev is not None and not _lt(exp, prev):
                raise ValueError("exponents must be strictly decreasing")
            prev = exp
        self.terms = terms
        self._hash = hash(terms)

    @classmethod
    def of(cls, value: IntoOrdinal) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot convert {value!r} to an ordinal")
        if value < 0:
            raise ValueError("ordinals are nonnegative")
        return _nat(value)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def below_omega_omega(self) -> bool:
        """True when every exponent is a natural number."""
        return all(exp.is_finite() for exp, _ in self.terms)

    def degree(self) -> "Ordinal":
        """Leading exponent (0 for the ordinal 0)."""
        return self.terms[0][0] if self.terms else ZERO

    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0].is_zero():
            return self.terms[-1][1]
        return 0

    def limit_part(self) -> "Ordinal":
        if self.is_successor():
            return Ordinal(self.terms[:-1])
        return self

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self.is_finite() and int(self) == other
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self.is_finite():
            return hash(int(self))
        return self._hash

    def __lt__(self, other):
        return ord_cmp(self, Ordinal.of(other)) < 0

    def __le__(self, other):
        return ord_cmp(self, Ordinal.of(other)) <= 0

    def __gt__(self, other):
        return ord_cmp(self, Ordinal.of(other)) > 0

    def __ge__(self, other):
        return ord_cmp(self, Ordinal.of(other)) >= 0

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        return ord_add(self, Ordinal.of(other))

    def __radd__(self, other):
        return ord_add(Ordinal.of(other), self)

    def __mul__(self, other):
        return ord_mul(self, Ordinal.of(other))

    def __rmul__(self, other):
        return ord_mul(Ordinal.of(other), self)

    def __pow__(self, other):
        return ord_pow(self, Ordinal.of(other))

    def __rpow__(self, other):
        return ord_pow(Ordinal.of(other), self)

    def __sub__(self, other):
        return ord_sub(self, Ordinal.of(other))

    # -- text -----------------------------------------------------------------

    def __str__(self) -> str:
        return render_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({render_ordinal(self)!r})"


_NAT_CACHE: dict[int, Ordinal] = {}


def _nat(n: int) -> Ordinal:
    o = _NAT_CACHE.get(n)
    if o is None:
        o = Ordinal(()) if n == 0 else Ordinal(((ZERO, n),))
        if n < 1024:
            _NAT_CACHE[n] = o
    return o


ZERO = Ordinal(())
_NAT_CACHE[0] = ZERO
ONE = Ordinal(((ZERO, 1),))
_NAT_CACHE[1] = ONE
OMEGA = Ordinal(((ONE, 1),))


def omega_power(exp: IntoOrdinal, coef: int = 1) -> Ordinal:
    """The monomial w^exp * coef."""
    return Ordinal(((Ordinal.of(exp), coef),))


def _lt(a: Ordinal, b: Ordinal) -> bool:
    return ord_cmp(a, b) < 0


def ord_cmp(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ord_cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    lead_exp, lead_coef = b.terms[0]
    kept = []
    for exp, coef in a.terms:
        c = ord_cmp(exp, lead_exp)
        if c > 0:
            kept.append((exp, coef))
        elif c == 0:
            lead_coef += coef
            break
        else:
            break
    return Ordinal((*kept, (lead_exp, lead_coef), *b.terms[1:]))


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if a.is_zero() or b.is_zero():
        return ZERO
    lead_exp, lead_coef = a.terms[0]
    out: list[tuple[Ordinal, int]] = []
    for exp, coef in b.terms:
        if exp.is_zero():
            # a * n: only the leading coefficient multiplies
            out.append((lead_exp, lead_coef * coef))
            out.extend(a.terms[1:])
        else:
            out.append((ord_add(lead_exp, exp), coef))
    return Ordinal(out)


def ord_pow(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal exponentiation with the convention 0^0 = 1."""
    if b.is_zero():
        return ONE
    if a.is_zero():
        return ZERO
    if a == ONE:
        return ONE
    result = ONE
    if a.is_finite():
        n = int(a)
        for exp, coef in b.terms:
            if exp.is_zero():
                result = ord_mul(result, _nat(n**coef))
            else:
                # n^(w^exp) = w^(w^g) where exp = 1 + g
                g = ord_sub(exp, ONE) if exp.is_finite() else exp
                result = ord_mul(result, omega_power(omega_power(g, coef) if not g.is_zero() else _nat(coef)))
        return result
    lead_exp = a.degree()
    lim, fin = b.limit_part(), b.finite_part()
    if not lim.is_zero():
        result = omega_power(ord_mul(lead_exp, lim))
    base = a
    # square-and-multiply is sound: multiplication is associative
    while fin:
        if fin & 1:
            result = ord_mul(result, base)
        fin >>= 1
        if fin:
            base = ord_mul(base, base)
    return result


def ord_sub(a: Ordinal, b: Ordinal) -> Ordinal:
    """Left subtraction: the unique x with b + x == a (requires b <= a)."""
    if ord_cmp(b, a) > 0:
        raise ValueError(f"cannot subtract {b} from smaller {a}")
    for i, (bt, at) in enumerate(zip(b.terms, a.terms)):
        if bt != at:
            (eb, cb), (ea, ca) = bt, at
            if ea == eb:
                return Ordinal(((ea, ca - cb), *a.terms[i + 1 :]))
            return Ordinal(a.terms[i:])
    return Ordinal(a.terms[len(b.terms) :])


def ord_divmod(p: Ordinal, d: Ordinal) -> tuple[Ordinal, Ordinal]:
    """Left division: p == d*q + r with r < d."""
    if d.is_zero():
        raise ZeroDivisionError("ordinal division by zero")
    q = ZERO
    rem = p
    d_exp, d_coef = d.terms[0]
    while ord_cmp(rem, d) >= 0:
        r_exp, r_coef = rem.terms[0]
        g = ord_sub(r_exp, d_exp)
        if g.is_zero():
            k = r_coef // d_coef
            if ord_cmp(ord_mul(d, _nat(k)), rem) > 0:
                k -= 1
            step = _nat(k)
        else:
            step = omega_power(g, r_coef)
        q = ord_add(q, step)
        rem = ord_sub(rem, ord_mul(d, step))
    return q, rem


# -- sequences ------------------------------------------------------------------

V = TypeVar("V")


class PiecewiseSeq(Generic[V]):
    """An ordinal-indexed sequence made of finitely many constant runs.

    Runs are ``(length, value)`` pairs.  Adjacent runs with equal values are
    merged at construction, so two sequences are equal iff their run tuples
    are equal.
    """

    __slots__ = ("runs",)

    def __init__(self, runs: Iterable[tuple[IntoOrdinal, V]]):
        merged: list[tuple[Ordinal, V]] = []
        for length, value in runs:
            length = Ordinal.of(length)
            if length.is_zero():
                raise ValueError("run lengths must be nonzero")
            if merged and merged[-1][1] == value:
                merged[-1] = (ord_add(merged[-1][0], length), value)
            else:
                merged.append((length, value))
        if not merged:
            raise ValueError("a PiecewiseSeq needs at least one run")
        self.runs: tuple[tuple[Ordinal, V], ...] = tuple(merged)

    def __iter__(self) -> Iterator[tuple[Ordinal, V]]:
        return iter(self.runs)

    def __len__(self) -> int:
        return len(self.runs)

    def __eq__(self, other):
        return isinstance(other, PiecewiseSeq) and self.runs == other.runs

    def __hash__(self):
        return hash(self.runs)

    def __repr__(self):
        inner = ", ".join(f"({length}, {value!r})" for length, value in self.runs)
        return f"PiecewiseSeq([{inner}])"

    @property
    def length(self) -> Ordinal:
        total = ZERO
        for length, _ in self.runs:
            total = ord_add(total, length)
        return total

    def map(self, fn: Callable[[V], "V"]) -> "PiecewiseSeq":
        return PiecewiseSeq((length, fn(value)) for length, value in self.runs)

    def values(self) -> list[V]:
        return [v for _, v in self.runs]

    def split_run(self, index: int, head: Ordinal) -> list[tuple[Ordinal, V]]:
        """Run list with run ``index`` cut into ``head`` and the remainder."""
        length, value = self.runs[index]
        if not (ZERO < head < length):
            raise ValueError("split point must fall strictly inside the run")
        runs = list(self.runs)
        runs[index : index + 1] = [(head, value), (ord_sub(length, head), value)]
        return runs

    def regroup(self, cuts: Sequence[int], raw_runs: Sequence[tuple[Ordinal, V]] | None = None) -> list["PiecewiseSeq"]:
        """Cut the run list (optionally pre-split) before each index in ``cuts``."""
        runs = list(self.runs if raw_runs is None else raw_runs)
        bounds = [0, *sorted(set(cuts)), len(runs)]
        groups = []
        for lo, hi in zip(bounds, bounds[1:]):
            if lo >= hi:
                raise ValueError("empty group in regrouping")
            groups.append(PiecewiseSeq(runs[lo:hi]))
        return groups


def ord_sum_seq(s: PiecewiseSeq) -> Ordinal:
    """Transfinite sum: each run (length, v) contributes v * length."""
    total = ZERO
    for length, value in s:
        total = ord_add(total, ord_mul(Ordinal.of(value), length))
    return total


def ord_prod_seq(s: PiecewiseSeq) -> Ordinal:
    """Transfinite product: each run (length, v) contributes v ** length."""
    total = ONE
    for length, value in s:
        total = ord_mul(total, ord_pow(Ordinal.of(value), length))
    return total


# -- text -----------------------------------------------------------------------


def render_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for exp, coef in a.terms:
        if exp.is_zero():
            parts.append(str(coef))
            continue
        if exp == ONE:
            head = "w"
        elif exp.is_finite():
            head = f"w^{int(exp)}"
        else:
            head = "w^{" + render_ordinal(exp) + "}"
        parts.append(head if coef == 1 else f"{head}*{coef}")
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([wω])|([-+*^(){}]))")


class _OrdinalParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise OrdinalParseError("unexpected character", text, pos)
            start = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("num", m.group(1), start))
            elif m.group(2):
                self.tokens.append(("w", "w", start))
            else:
                self.tokens.append(("op", m.group(3), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value=None):
        tok = self.peek()
        if tok is None:
            raise OrdinalParseError("unexpected end of input", self.text, len(self.text))
        if value is not None and tok[1] != value:
            raise OrdinalParseError(f"expected {value!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> Ordinal:
        if not self.tokens:
            raise OrdinalParseError("empty ordinal expression", self.text, 0)
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise OrdinalParseError("trailing input", self.text, tok[2])
        return value

    def expr(self) -> Ordinal:
        value = self.term()
        while (tok := self.peek()) is not None and tok[1] == "+":
            self.take()
            value = ord_add(value, self.term())
        return value

    def term(self) -> Ordinal:
        value = self.factor()
        while (tok := self.peek()) is not None and tok[1] == "*":
            self.take()
            value = ord_mul(value, self.factor())
        return value

    def factor(self) -> Ordinal:
        base = self.atom()
        if (tok := self.peek()) is not None and tok[1] == "^":
            self.take()
            # right associative
            return ord_pow(base, self.factor())
        return base

    def atom(self) -> Ordinal:
        kind, value, pos = self.take()
        if kind == "num":
            return Ordinal.of(int(value))
        if kind == "w":
            return OMEGA
        if value in "({":
            inner = self.expr()
            self.take(")" if value == "(" else "}")
            return inner
        raise OrdinalParseError(f"unexpected {value!r}", self.text, pos)


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``w^2*3 + w + 5`` style expressions (sums, products, powers)."""
    return _OrdinalParser(text).parse()
