"""Finitely presented partial infinitary semigroups.

A ``FinAlgebra`` is a finite carrier with a partial binary table, a partial
omega-power table and optionally an omega*-power table.  Products over a
word term are computed by folding the term: concatenation is a left fold,
``w^(w^k)`` iterates the omega table and a CNF exponent multiplies out its
blocks.  Any missing entry makes the product undefined.

Structured instances (constructions with infinite or implicit carriers)
subclass ``InfSemigroup`` and only need ``elements`` and ``evaluate``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .ordinal import OMEGA, Ordinal
from .orderword import (
    EMPTY,
    Concat,
    Empty,
    Letter,
    Power,
    StarPower,
    Term,
    concat,
    is_ordinal_term,
    power,
    render_word,
    star,
)

__all__ = [
    "COMPLETENESS_CLASSES",
    "Undefined",
    "ExponentTooLarge",
    "AlgebraFormatError",
    "Inconsistent",
    "InfSemigroup",
    "FinAlgebra",
    "TernaryExpansion",
    "ResidueBlock",
    "fold_term",
    "pi_eval",
    "check_ternary_to_assoc",
    "canonical_expand",
]

COMPLETENESS_CLASSES = (
    "lt-omega",
    "leq-omega",
    "lt-omega1-symbolic",
    "ordinal",
    "complete-on-encodable",
)


class Undefined(Exception):
    """A product the algebra leaves undefined; ``witness`` is the failing subterm."""

    def __init__(self, witness: Term, reason: str = ""):
        self.witness = witness
        self.reason = reason
        msg = f"undefined product at {render_word(witness)}"
        super().__init__(msg + (f" ({reason})" if reason else ""))


class ExponentTooLarge(ValueError):
    pass


class AlgebraFormatError(ValueError):
    pass


class Inconsistent(ValueError):
    def __init__(self, witness: tuple):
        self.witness = witness
        super().__init__(f"no binary operation fits the ternary table; conflict at {witness}")


# -- generic fold ----------------------------------------------------------------------


def fold_term(
    term: Term,
    leaf: Callable[[Hashable], Any],
    mul: Callable[[Any, Any], Any],
    omega: Callable[[Any], Any],
    omega_star: Callable[[Any], Any] | None = None,
    empty: Any = None,
):
    """Evaluate ``term`` bottom-up.  Callbacks return ``None`` for undefined."""

    def ev(t: Term):
        if isinstance(t, Letter):
            v = leaf(t.symbol)
            if v is None:
                raise Undefined(t, "letter outside the carrier")
            return v
        if isinstance(t, Concat):
            acc = ev(t.parts[0])
            for i in range(1, len(t.parts)):
                acc = mul(acc, ev(t.parts[i]))
                if acc is None:
                    raise Undefined(concat(*t.parts[: i + 1]))
            return acc
        if isinstance(t, Power):
            return ev_power(t)
        if isinstance(t, StarPower):
            if omega_star is None:
                raise Undefined(t, "no omega* table")
            v = omega_star(ev(t.base))
            if v is None:
                raise Undefined(t)
            return v
        if empty is None:
            raise Undefined(t, "empty product")
        return empty

    def ev_power(t: Power):
        base = ev(t.base)
        acc = None
        for exp, coef in t.exponent.terms:
            if not exp.is_finite():
                raise ExponentTooLarge(f"exponent {t.exponent} is not below w^w")
            x = base
            for k in range(int(exp)):
                x = omega(x)
                if x is None:
                    raise Undefined(power(t.base, Ordinal(((Ordinal.of(k + 1), 1),))))
            y = _finite_power(x, coef, mul, t)
            if acc is None:
                acc = y
            else:
                acc = mul(acc, y)
                if acc is None:
                    raise Undefined(t)
        return acc

    return ev(term)


def _finite_power(x, n: int, mul, t: Power):
    # x^n by left fold, skipping ahead once the sequence x, x^2, ... cycles
    seen = {x: 1}
    seq = [x]
    cur = x
    k = 1
    while k < n:
        cur = mul(cur, x)
        if cur is None:
            raise Undefined(power(t.base, k + 1))
        k += 1
        if cur in seen:
            start = seen[cur]
            period = k - start
            return seq[start - 1 + (n - start) % period]
        seen[cur] = k
        seq.append(cur)
    return cur


# -- interface ---------------------------------------------------------------------------


class InfSemigroup:
    """Interface shared by table algebras and structured instances."""

    name: str = ""
    completeness_class: str | None = None
    supports_star: bool = False
    supports_omega: bool = True
    commutative_claim: bool = False

    def elements(self) -> list:
        raise NotImplementedError

    def evaluate(self, term: Term):
        raise NotImplementedError

    def try_evaluate(self, term: Term):
        try:
            return self.evaluate(term)
        except Undefined:
            return None

    def empty_product(self):
        try:
            return self.evaluate(EMPTY)
        except Undefined:
            return None

    def describe(self) -> str:
        return self.name or type(self).__name__

    def render_element(self, x) -> str:
        return str(x)


class FinAlgebra(InfSemigroup):
    """Finite carrier with partial ``bin``, ``omega`` and optional ``omega_star`` tables."""

    def __init__(
        self,
        carrier: Sequence[str],
        bin: Mapping[tuple[str, str], str],
        omega: Mapping[str, str] | None = None,
        omega_star: Mapping[str, str] | None = None,
        sorts: tuple[Sequence[str], Sequence[str]] | None = None,
        empty: str | None = None,
        completeness_class: str = "lt-omega",
        name: str = "",
    ):
        carrier = tuple(carrier)
        if not carrier:
            raise AlgebraFormatError("carrier must be nonempty")
        if len(set(carrier)) != len(carrier):
            raise AlgebraFormatError("carrier has repeated elements")
        cs = set(carrier)

        def check_map(m, arity, label):
            out = {}
            for k, v in (m or {}).items():
                keys = k if arity == 2 else (k,)
                if arity == 2 and (not isinstance(k, tuple) or len(k) != 2):
                    raise AlgebraFormatError(f"{label} key {k!r} is not a pair")
                if any(x not in cs for x in keys) or v not in cs:
                    raise AlgebraFormatError(f"{label} entry {k!r} -> {v!r} leaves the carrier")
                out[k] = v
            return MappingProxyType(out)

        self.carrier = carrier
        self.bin = check_map(bin, 2, "bin")
        self.omega = check_map(omega, 1, "omega")
        self.omega_star = None if omega_star is None else check_map(omega_star, 1, "omega_star")
        if sorts is not None:
            plus, om = tuple(sorts[0]), tuple(sorts[1])
            if set(plus) & set(om) or set(plus) | set(om) != cs:
                raise AlgebraFormatError("sorts must partition the carrier")
            sorts = (plus, om)
        self.sorts = sorts
        if empty is not None and empty not in cs:
            raise AlgebraFormatError(f"empty product {empty!r} is not in the carrier")
        self.empty = empty
        if completeness_class not in COMPLETENESS_CLASSES:
            raise AlgebraFormatError(f"unknown completeness class {completeness_class!r}")
        self.completeness_class = completeness_class
        self.name = name
        self.supports_star = self.omega_star is not None
        self.supports_omega = bool(self.omega)
        self._index = {x: i for i, x in enumerate(carrier)}

    def elements(self) -> list:
        return list(self.carrier)

    def evaluate(self, term: Term):
        return pi_eval(self, term)

    def mul(self, x, y):
        return self.bin.get((x, y))

    def is_total(self) -> bool:
        return len(self.bin) == len(self.carrier) ** 2

    def __eq__(self, other):
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __hash__(self):
        return hash(json.dumps(self.to_json(), sort_keys=True))

    def __repr__(self):
        return f"FinAlgebra({self.name or list(self.carrier)!r})"

    # -- serialization ----------------------------------------------------------

    _KEYS = {"carrier", "bin", "omega", "omega_star", "sorts", "empty", "class", "name"}

    def to_json(self) -> dict:
        order = self._index

        def pair_key(k):
            return (order[k[0]], order[k[1]])

        out: dict[str, Any] = {
            "carrier": list(self.carrier),
            "bin": {f"{a},{b}": self.bin[(a, b)] for a, b in sorted(self.bin, key=pair_key)},
            "omega": {a: self.omega[a] for a in sorted(self.omega, key=order.__getitem__)},
        }
        if self.omega_star is not None:
            out["omega_star"] = {a: self.omega_star[a] for a in sorted(self.omega_star, key=order.__getitem__)}
        if self.sorts is not None:
            out["sorts"] = {"plus": list(self.sorts[0]), "omega": list(self.sorts[1])}
        if self.empty is not None:
            out["empty"] = self.empty
        out["class"] = self.completeness_class
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "FinAlgebra":
        if not isinstance(data, Mapping):
            raise AlgebraFormatError("algebra file must hold a JSON object")
        unknown = set(data) - cls._KEYS
        if unknown:
            raise AlgebraFormatError(f"unknown keys: {sorted(unknown)}")
        if "carrier" not in data:
            raise AlgebraFormatError("missing key 'carrier'")
        carrier = [str(x) for x in data["carrier"]]
        cs = set(carrier)

        def split(key: str) -> tuple[str, str]:
            cuts = [i for i, ch in enumerate(key) if ch == "," and key[:i] in cs and key[i + 1 :] in cs]
            if len(cuts) != 1:
                raise AlgebraFormatError(f"bin key {key!r} does not split into two carrier elements")
            i = cuts[0]
            return key[:i], key[i + 1 :]

        bin_ = {split(k): v for k, v in (data.get("bin") or {}).items()}
        sorts = data.get("sorts")
        if sorts is not None:
            if set(sorts) != {"plus", "omega"}:
                raise AlgebraFormatError("sorts needs exactly the keys 'plus' and 'omega'")
            sorts = (sorts["plus"], sorts["omega"])
        return cls(
            carrier,
            bin_,
            data.get("omega") or {},
            data.get("omega_star"),
            sorts,
            data.get("empty"),
            data.get("class", "lt-omega"),
            data.get("name", ""),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "FinAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise AlgebraFormatError(f"line {err.lineno} column {err.colno}: {err.msg}") from None
        return cls.from_json(data)

    @classmethod
    def load(cls, path: str | Path) -> "FinAlgebra":
        return cls.loads(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())


def pi_eval(alg: FinAlgebra, w: Term):
    """Product of ``w`` in ``alg``; raises ``Undefined`` or ``ExponentTooLarge``."""
    if isinstance(w, Empty):
        if alg.empty is None:
            raise Undefined(w, "no empty product")
        return alg.empty
    cs = alg._index
    return fold_term(
        w,
        leaf=lambda s: s if s in cs else None,
        mul=alg.mul,
        omega=alg.omega.get,
        omega_star=alg.omega_star.get if alg.omega_star is not None else None,
    )


# -- ternary tables ------------------------------------------------------------------------


@dataclass(frozen=True)
class TernaryExpansion:
    algebra: FinAlgebra
    multiplicity: int


def check_ternary_to_assoc(carrier: Sequence[str], tern: Mapping[tuple[str, str, str], str]) -> TernaryExpansion:
    """Recover a binary operation compatible with a total ternary table.

    Among all consistent tables the lexicographically least (cells in row
    order, values in carrier order) is returned with the number of
    consistent tables.  Raises ``Inconsistent`` when none exists.
    """
    carrier = tuple(carrier)
    for t in itertools.product(carrier, repeat=3):
        if t not in tern:
            raise AlgebraFormatError(f"ternary table is missing {t}")
    cells = [(a, b) for a in carrier for b in carrier]
    table: dict[tuple[str, str], str] = {}
    solutions: list[dict] = []
    deepest = [-1, None]

    def conflict() -> tuple | None:
        for a, b, c in itertools.product(carrier, repeat=3):
            want = tern[(a, b, c)]
            ab, bc = table.get((a, b)), table.get((b, c))
            if ab is not None and table.get((ab, c), want) != want:
                return (a, b, c)
            if bc is not None and table.get((a, bc), want) != want:
                return (a, b, c)
        return None

    def search(i: int):
        if i == len(cells):
            solutions.append(dict(table))
            return
        cell = cells[i]
        for v in carrier:
            table[cell] = v
            bad = conflict()
            if bad is None:
                search(i + 1)
            elif i >= deepest[0]:
                deepest[0], deepest[1] = i, bad
            del table[cell]

    search(0)
    if not solutions:
        raise Inconsistent(deepest[1] if deepest[1] is not None else (carrier[0],) * 3)
    return TernaryExpansion(FinAlgebra(carrier, solutions[0], {}, name="ternary-expansion"), len(solutions))


# -- canonical expansion -------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueBlock:
    """An omega-indexed block of positions: integers ``n`` labelled by ``n mod period``.

    ``classes[r]`` is the position label used for residue ``r``.  With
    ``arrangement="interleaved"`` the positions carry the natural order of the
    integers (order type w); with ``"sequential"`` every residue class comes
    before the next one (order type w * period).
    """

    classes: tuple[Hashable, ...]
    arrangement: str = "interleaved"

    def __post_init__(self):
        if not self.classes:
            raise ValueError("a residue block needs at least one class")
        if self.arrangement not in ("interleaved", "sequential"):
            raise ValueError(f"unknown arrangement {self.arrangement!r}")


def canonical_expand(
    alg: InfSemigroup,
    positions: Iterable[Hashable | ResidueBlock],
    letters: Mapping[Hashable, Any],
    key: Callable[[Hashable], Any] | Mapping[Hashable, Any] | None = None,
):
    """Product over an abstractly indexed family.

    ``positions`` are finite labels and ``ResidueBlock`` items; ``key`` declares
    the order of the finite labels (default: the given order), and each block
    sits at the place of its first class label.  The index is mapped onto its
    ordinal by the unique order isomorphism and the resulting word evaluated.
    """
    items = list(positions)
    if not items:
        return alg.evaluate(EMPTY)
    if key is None:
        rank = {id(p): i for i, p in enumerate(items)}
        sort_key = lambda p: rank[id(p)]  # noqa: E731
    else:
        k = key.__getitem__ if isinstance(key, Mapping) else key
        sort_key = lambda p: k(p.classes[0] if isinstance(p, ResidueBlock) else p)  # noqa: E731
    labels = [p.classes[0] if isinstance(p, ResidueBlock) else p for p in items]
    if len(set(labels)) != len(labels):
        raise ValueError("position labels must be distinct")
    parts = []
    for p in sorted(items, key=sort_key):
        if isinstance(p, ResidueBlock):
            word = [Letter(letters[c]) for c in p.classes]
            if p.arrangement == "interleaved":
                parts.append(power(concat(*word), OMEGA))
            else:
                parts.extend(power(x, OMEGA) for x in word)
        else:
            parts.append(Letter(letters[p]))
    return alg.evaluate(concat(*parts))

