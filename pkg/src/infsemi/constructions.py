"""Ways of building new infinitary semigroups from old ones.

Table-level recipes (completion by an absorbing element, adjoining a
complete identity, power sets, direct products) return ``FinAlgebra``
values.  Recipes whose product is not a fold of finite tables (restriction
to a subset, quotients, endpoint products, inflationary maps, convergent
series) return structured instances implementing ``InfSemigroup``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .algebra import COMPLETENESS_CLASSES, ExponentTooLarge, FinAlgebra, InfSemigroup, Undefined, fold_term
from .audit import CheckReport, check_axiom, enumerate_words, DEFAULT_EXPONENTS
from .ordinal import OMEGA, Ordinal, PiecewiseSeq
from .orderword import (
    EMPTY,
    Concat,
    Empty,
    Letter,
    Power,
    StarPower,
    Term,
    concat,
    first_letter,
    has_max,
    has_min,
    is_ordinal_term,
    last_letter,
    letters_of,
    map_letters,
    omega_blocks,
    power,
    render_word,
    star,
    word_eq,
    word_length,
    EqVerdict,
)

__all__ = [
    "NarrViolated",
    "ConditionStarFails",
    "IdentityFails",
    "NotInflationary",
    "EmptySubset",
    "omega_completion",
    "CompletedInstance",
    "adjoin_identity",
    "IdentityAdjoined",
    "powerset_concat",
    "powerset_lift",
    "subset_id",
    "direct_product",
    "ProductInstance",
    "restrict",
    "RestrictedAlgebra",
    "quotient_by_map",
    "QuotientAlgebra",
    "left_projection",
    "endpoints_algebra",
    "EndpointsAlgebra",
    "MonotonePoset",
    "inflationary_algebra",
    "InflationaryAlgebra",
    "SeriesSeq",
    "series_sum",
    "series_product",
    "pair_tail",
    "shift_tail",
    "SeriesInstance",
    "lifted_values",
]


class NarrViolated(ValueError):
    def __init__(self, report: CheckReport):
        self.report = report
        super().__init__("grouped products defined but the direct one is not: " + report.render())


class ConditionStarFails(ValueError):
    def __init__(self, w1: Term, w2: Term, v1, v2):
        self.words = (w1, w2)
        self.values = (v1, v2)
        super().__init__(f"letterwise equal images but {render_word(w1)} -> {v1} and {render_word(w2)} -> {v2} map apart")


class IdentityFails(ValueError):
    def __init__(self, triple: tuple):
        self.witness = triple
        super().__init__(f"a*b*c != a*c at {triple}")


class NotInflationary(ValueError):
    pass


class EmptySubset(ValueError):
    pass


def _fresh(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


# -- absorbing completion ----------------------------------------------------------------------


class CompletedInstance(InfSemigroup):
    """Every product the base leaves undefined becomes the new element."""

    completeness_class = "complete-on-encodable"

    def __init__(self, base: InfSemigroup, top: Hashable = "Omega"):
        self.base = base
        self.top = top
        self.name = f"completion({base.describe()})"
        self.supports_star = base.supports_star
        self.supports_omega = True

    def elements(self):
        return list(self.base.elements()) + [self.top]

    def evaluate(self, term):
        if isinstance(term, Empty):
            return self.base.evaluate(term)
        if self.top in letters_of(term):
            return self.top
        try:
            return self.base.evaluate(term)
        except Undefined:
            return self.top

    def render_element(self, x):
        return str(x) if x == self.top else self.base.render_element(x)


def omega_completion(
    alg: InfSemigroup,
    budget: int = 10_000,
    seed: int = 0,
    check: bool = True,
    top: str = "Omega",
) -> InfSemigroup:
    """Add an absorbing element standing for every undefined product.

    The recipe is only sound under the NARR condition, which is audited
    first (``check=False`` skips the audit, for studying failures).
    """
    if check:
        rep = check_axiom(alg, "NARR", budget, seed)
        if rep.failed:
            raise NarrViolated(rep)
    if not isinstance(alg, FinAlgebra):
        return CompletedInstance(alg, top)
    om = _fresh(top, alg.carrier)
    carrier = list(alg.carrier) + [om]
    bin_ = {(a, b): alg.bin.get((a, b), om) for a in carrier for b in carrier}
    omega = {a: alg.omega.get(a, om) for a in carrier}
    omega_star = None
    if alg.omega_star is not None:
        omega_star = {a: alg.omega_star.get(a, om) for a in carrier}
    for a in carrier:
        bin_[(a, om)] = bin_[(om, a)] = om
    omega[om] = om
    if omega_star is not None:
        omega_star[om] = om
    return FinAlgebra(
        carrier,
        bin_,
        omega,
        omega_star,
        None,
        alg.empty,
        "complete-on-encodable",
        f"completion({alg.describe()})",
    )


# -- complete identity -----------------------------------------------------------------------------


class IdentityAdjoined(InfSemigroup):
    def __init__(self, base: InfSemigroup, e: Hashable = "e"):
        self.base = base
        self.e = e
        self.name = f"adjoin-identity({base.describe()})"
        self.supports_star = base.supports_star
        self.supports_omega = base.supports_omega
        self.completeness_class = base.completeness_class

    def elements(self):
        return list(self.base.elements()) + [self.e]

    def evaluate(self, term):
        rest = map_letters(term, lambda s: EMPTY if s == self.e else Letter(s))
        if isinstance(rest, Empty):
            return self.e
        return self.base.evaluate(rest)


def adjoin_identity(alg: InfSemigroup, e: str = "e") -> InfSemigroup:
    """Adjoin a fresh complete identity; it becomes the empty product."""
    if not isinstance(alg, FinAlgebra):
        return IdentityAdjoined(alg, e)
    e = _fresh(e, alg.carrier)
    carrier = list(alg.carrier) + [e]
    bin_ = dict(alg.bin)
    for a in carrier:
        bin_[(a, e)] = a
        bin_[(e, a)] = a
    omega = dict(alg.omega)
    omega[e] = e
    omega_star = None
    if alg.omega_star is not None:
        omega_star = dict(alg.omega_star)
        omega_star[e] = e
    return FinAlgebra(
        carrier, bin_, omega, omega_star, None, e, alg.completeness_class,
        f"adjoin-identity({alg.describe()})")


# -- power sets ---------------------------------------------------------------------------------------


def subset_id(xs: Iterable[str], order: Sequence[str]) -> str:
    rank = {x: i for i, x in enumerate(order)}
    return "{" + ",".join(sorted(set(xs), key=rank.__getitem__)) + "}"


def _all_subsets(carrier: Sequence[str], nonempty: bool) -> list[frozenset]:
    out = []
    for k in range(0 if not nonempty else 1, len(carrier) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(carrier, k))
    return out


def _plus(alg: FinAlgebra, xs: Iterable[str]) -> frozenset:
    """Closure under the (partial) binary product: all finite products."""
    got = set(xs)
    frontier = list(got)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(got):
                for v in (alg.bin.get((a, b)), alg.bin.get((b, a))):
                    if v is not None and v not in got:
                        got.add(v)
                        nxt.append(v)
        frontier = nxt
    return frozenset(got)


def powerset_concat(S: FinAlgebra) -> FinAlgebra:
    """Subsets of a classical semigroup; a product collects every
    finite product along increasing picks of positions."""
    rep = check_axiom(S, "ASSOC3")
    if rep.failed or not S.is_total():
        raise ValueError("powerset_concat needs a total associative binary table")
    subsets = _all_subsets(S.carrier, nonempty=False)
    ident = {X: subset_id(X, S.carrier) for X in subsets}
    bin_ = {}
    for X in subsets:
        for Y in subsets:
            prod = {S.bin[(x, y)] for x in X for y in Y}
            bin_[(ident[X], ident[Y])] = ident[frozenset(X | Y | prod)]
    omega = {}
    bound = 2 * len(S.carrier)
    for X in subsets:
        # products of at most 2|S| picks, then confirm closure
        level = set(X)
        got = set(X)
        for _ in range(bound - 1):
            level = {S.bin[(a, x)] for a in level for x in X}
            got |= level
        if _plus(S, got) != frozenset(got):
            raise RuntimeError(f"saturation bound too small for {ident[X]}")
        omega[ident[X]] = ident[frozenset(got)]
    return FinAlgebra(
        [ident[X] for X in subsets],
        bin_,
        omega,
        dict(omega),
        None,
        None,
        "complete-on-encodable",
        f"powerset-concat({S.describe()})",
    )


def lifted_values(alg: FinAlgebra, term: Term) -> dict:
    """Values of all defined products over ultimately periodic choices.

    ``term`` has sets of carrier elements as letters.  The result maps each
    reachable value to a witnessing choice word over the carrier.
    """
    rank = {x: i for i, x in enumerate(alg.carrier)}

    def tidy(d: dict) -> dict:
        return {k: d[k] for k in sorted(d, key=rank.__getitem__)}

    def plus(X: dict) -> dict:
        got = dict(X)
        frontier = list(got.items())
        while frontier:
            nxt = []
            for a, wa in frontier:
                for b, wb in list(got.items()):
                    for v, w in ((alg.bin.get((a, b)), (wa, wb)), (alg.bin.get((b, a)), (wb, wa))):
                        if v is not None and v not in got:
                            got[v] = concat(*w)
                            nxt.append((v, got[v]))
            frontier = nxt
        return got

    def mul(X: dict, Y: dict) -> dict:
        out = {}
        for a, wa in X.items():
            for b, wb in Y.items():
                v = alg.bin.get((a, b))
                if v is not None:
                    out.setdefault(v, concat(wa, wb))
        return tidy(out)

    def npow(X: dict, n: int) -> dict:
        acc, base = None, X
        while n:
            if n & 1:
                acc = base if acc is None else mul(acc, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return acc

    def omega(X: dict) -> dict:
        P = plus(X)
        out = {}
        for t, wt in P.items():
            v = alg.omega.get(t)
            if v is not None:
                out.setdefault(v, power(wt, OMEGA))
        for s, ws in P.items():
            for t, wt in P.items():
                v = alg.omega.get(t)
                u = None if v is None else alg.bin.get((s, v))
                if u is not None:
                    out.setdefault(u, concat(ws, power(wt, OMEGA)))
        return tidy(out)

    def omega_star(X: dict) -> dict:
        P = plus(X)
        out = {}
        for t, wt in P.items():
            v = alg.omega_star.get(t)
            if v is not None:
                out.setdefault(v, star(wt))
        for s, ws in P.items():
            for t, wt in P.items():
                v = alg.omega_star.get(t)
                u = None if v is None else alg.bin.get((v, s))
                if u is not None:
                    out.setdefault(u, concat(star(wt), ws))
        return tidy(out)

    def ev(t: Term) -> dict:
        if isinstance(t, Empty):
            return {alg.empty: EMPTY} if alg.empty is not None else {}
        if isinstance(t, Letter):
            return tidy({x: Letter(x) for x in t.symbol if x in rank})
        if isinstance(t, Concat):
            acc = ev(t.parts[0])
            for p in t.parts[1:]:
                acc = mul(acc, ev(p))
            return acc
        if isinstance(t, StarPower):
            if alg.omega_star is None:
                return {}
            return omega_star(ev(t.base))
        base = ev(t.base)
        acc = None
        for exp, coef in t.exponent.terms:
            if not exp.is_finite():
                raise ExponentTooLarge(f"exponent {t.exponent} is not below w^w")
            x = base
            for _ in range(int(exp)):
                x = omega(x)
            y = npow(x, coef)
            acc = y if acc is None else mul(acc, y)
        return acc

    return ev(term)


def powerset_lift(alg: FinAlgebra, budget: int = 10_000, seed: int = 0) -> FinAlgebra:
    """All subsets; a product is the set of defined products over choices
    (ultimately periodic choices, which suffice on a finite carrier)."""
    rep = check_axiom(alg, "NARR", budget, seed)
    if rep.failed:
        raise NarrViolated(rep)
    subsets = _all_subsets(alg.carrier, nonempty=False)
    ident = {X: subset_id(X, alg.carrier) for X in subsets}
    L = Letter
    bin_, omega, omega_star = {}, {}, ({} if alg.omega_star is not None else None)
    for X in subsets:
        omega[ident[X]] = ident[frozenset(lifted_values(alg, power(L(X), OMEGA)))]
        if omega_star is not None:
            omega_star[ident[X]] = ident[frozenset(lifted_values(alg, star(L(X))))]
        for Y in subsets:
            bin_[(ident[X], ident[Y])] = ident[frozenset(lifted_values(alg, concat(L(X), L(Y))))]
    empty = None
    if alg.empty is not None:
        empty = ident[frozenset({alg.empty})]
    return FinAlgebra(
        [ident[X] for X in subsets],
        bin_,
        omega,
        omega_star,
        None,
        empty,
        "complete-on-encodable",
        f"powerset-lift({alg.describe()})",
    )


# -- direct products ------------------------------------------------------------------------------------


def _tuple_id(xs: Sequence[str]) -> str:
    return "(" + ",".join(xs) + ")"


class ProductInstance(InfSemigroup):
    def __init__(self, factors: Sequence[InfSemigroup]):
        self.factors = tuple(factors)
        self.name = " x ".join(f.describe() for f in factors) or "trivial"
        self.supports_star = all(f.supports_star for f in factors)
        self.supports_omega = all(f.supports_omega for f in factors)
        classes = [f.completeness_class for f in factors]
        self.completeness_class = min(classes, key=_class_rank) if classes else "complete-on-encodable"

    def elements(self):
        return list(itertools.product(*(f.elements() for f in self.factors)))

    def evaluate(self, term):
        return tuple(f.evaluate(map_letters(term, lambda s, i=i: Letter(s[i]))) for i, f in enumerate(self.factors))


def _class_rank(c: str | None) -> int:
    return -1 if c is None else COMPLETENESS_CLASSES.index(c)


def direct_product(algs: Sequence[InfSemigroup]) -> InfSemigroup:
    """Pointwise product; defined exactly when every coordinate is."""
    algs = list(algs)
    if not all(isinstance(a, FinAlgebra) for a in algs):
        return ProductInstance(algs)
    tuples = list(itertools.product(*(a.carrier for a in algs)))
    ident = {t: _tuple_id(t) for t in tuples}
    bin_, omega = {}, {}
    star_ok = all(a.omega_star is not None for a in algs)
    omega_star = {} if star_ok else None
    for s in tuples:
        vals = [a.omega.get(x) for a, x in zip(algs, s)]
        if None not in vals:
            omega[ident[s]] = ident[tuple(vals)]
        if star_ok:
            vals = [a.omega_star.get(x) for a, x in zip(algs, s)]
            if None not in vals:
                omega_star[ident[s]] = ident[tuple(vals)]
        for t in tuples:
            vals = [a.bin.get((x, y)) for a, x, y in zip(algs, s, t)]
            if None not in vals:
                bin_[(ident[s], ident[t])] = ident[tuple(vals)]
    empties = [a.empty for a in algs]
    empty = ident[tuple(empties)] if None not in empties else None
    cls = min((a.completeness_class for a in algs), key=_class_rank) if algs else "complete-on-encodable"
    name = " x ".join(a.describe() for a in algs) or "trivial"
    return FinAlgebra([ident[t] for t in tuples], bin_, omega, omega_star, None, empty, cls, name)


# -- restriction to a subset ------------------------------------------------------------------------------


@dataclass(frozen=True)
class _Summary:
    value: Any
    prefixes: frozenset
    suffixes: frozenset
    factors: frozenset


class RestrictedAlgebra(InfSemigroup):
    """Products defined when every convex subproduct is defined and lies in T.

    The values of all convex pieces are tracked exactly through summaries
    (value, prefix values, suffix values, all piece values) computed by
    structural recursion, so the infinitely many convex pieces of an
    infinite word are covered.
    """

    def __init__(self, base: FinAlgebra, T: Iterable[str]):
        self.base = base
        self.T = frozenset(T)
        self.name = f"restrict({base.describe()}, {subset_id(self.T, base.carrier)})"
        self.supports_star = base.supports_star
        self.supports_omega = base.supports_omega
        self.completeness_class = None

    def elements(self):
        return [x for x in self.base.carrier if x in self.T]

    def _mul(self, a, b, t):
        v = self.base.bin.get((a, b))
        if v is None or v not in self.T:
            raise Undefined(t, "convex piece leaves the subset")
        return v

    def _mulset(self, A, B, t):
        return frozenset(self._mul(a, b, t) for a in A for b in B)

    def _concat(self, x: _Summary, y: _Summary, t) -> _Summary:
        m = lambda A, B: self._mulset(A, B, t)  # noqa: E731
        return _Summary(
            self._mul(x.value, y.value, t),
            x.prefixes | m({x.value}, y.prefixes),
            y.suffixes | m(x.suffixes, {y.value}),
            x.factors | y.factors | m(x.suffixes, y.prefixes),
        )

    def _powers(self, x, t) -> frozenset:
        got, cur = {x}, x
        while True:
            cur = self._mul(cur, x, t)
            if cur in got:
                return frozenset(got)
            got.add(cur)

    def _omega(self, s: _Summary, t) -> _Summary:
        v = self.base.omega.get(s.value)
        if v is None or v not in self.T:
            raise Undefined(t, "omega-power leaves the subset")
        pw = self._powers(s.value, t)
        m = lambda A, B: self._mulset(A, B, t)  # noqa: E731
        prefixes = s.prefixes | m(pw, s.prefixes) | {v}
        suffixes = m(s.suffixes, {v}) | {v}
        mids = m(s.suffixes, s.prefixes) | m(m(s.suffixes, pw), s.prefixes)
        return _Summary(v, prefixes, suffixes, s.factors | mids | prefixes | suffixes)

    def _omega_star(self, s: _Summary, t) -> _Summary:
        v = self.base.omega_star.get(s.value)
        if v is None or v not in self.T:
            raise Undefined(t, "omega*-power leaves the subset")
        pw = self._powers(s.value, t)
        m = lambda A, B: self._mulset(A, B, t)  # noqa: E731
        suffixes = s.suffixes | m(s.suffixes, pw) | {v}
        prefixes = m({v}, s.prefixes) | {v}
        mids = m(s.suffixes, s.prefixes) | m(m(s.suffixes, pw), s.prefixes)
        return _Summary(v, prefixes, suffixes, s.factors | mids | prefixes | suffixes)

    def _summary(self, t: Term) -> _Summary:
        if isinstance(t, Letter):
            x = t.symbol
            if x not in self.T:
                raise Undefined(t, "letter outside the subset")
            one = frozenset({x})
            return _Summary(x, one, one, one)
        if isinstance(t, Concat):
            acc = self._summary(t.parts[0])
            for p in t.parts[1:]:
                acc = self._concat(acc, self._summary(p), t)
            return acc
        if isinstance(t, StarPower):
            if self.base.omega_star is None:
                raise Undefined(t, "no omega* table")
            return self._omega_star(self._summary(t.base), t)
        if isinstance(t, Power):
            base = self._summary(t.base)
            acc = None
            for exp, coef in t.exponent.terms:
                x = base
                for _ in range(int(exp)):
                    x = self._omega(x, t)
                blockv = x
                for _ in range(coef - 1):
                    blockv = self._concat(blockv, x, t)
                acc = blockv if acc is None else self._concat(acc, blockv, t)
            return acc
        raise Undefined(t, "empty product")

    def evaluate(self, term):
        return self._summary(term).value

    def convex_values(self, term) -> frozenset:
        return self._summary(term).factors


def restrict(alg: FinAlgebra, T: Iterable[str]) -> RestrictedAlgebra:
    T = frozenset(T)
    if not T:
        raise EmptySubset("restriction needs a nonempty subset")
    if not T <= set(alg.carrier):
        raise ValueError(f"{sorted(T - set(alg.carrier))} are not in the carrier")
    return RestrictedAlgebra(alg, T)


# -- quotients -------------------------------------------------------------------------------------------------


class QuotientAlgebra(InfSemigroup):
    """Products on T computed through preimages, as long as condition (*) holds."""

    def __init__(self, base: FinAlgebra, phi: Mapping[str, Hashable], T: Sequence[Hashable]):
        self.base = base
        self.phi = dict(phi)
        self.T = list(T)
        self.pre = {c: frozenset(a for a in base.carrier if self.phi[a] == c) for c in self.T}
        self.name = f"quotient({base.describe()})"
        self.supports_star = base.supports_star
        self.supports_omega = base.supports_omega
        self.completeness_class = None

    def elements(self):
        return list(self.T)

    def preimage_word(self, term: Term) -> Term:
        return map_letters(term, lambda c: Letter(self.pre[c]))

    def evaluate(self, term):
        for c in letters_of(term):
            if c not in self.pre:
                raise Undefined(Letter(c), "letter outside the target set")
        if isinstance(term, Letter):
            return term.symbol
        vals = lifted_values(self.base, self.preimage_word(term))
        if not vals:
            raise Undefined(term, "no preimage product is defined")
        images = {}
        for v, w in vals.items():
            images.setdefault(self.phi[v], (v, w))
        if len(images) > 1:
            (c1, (v1, w1)), (c2, (v2, w2)) = list(images.items())[:2]
            raise ConditionStarFails(w1, w2, v1, v2)
        return next(iter(images))


def quotient_by_map(
    alg: FinAlgebra,
    phi: Mapping[str, Hashable],
    T: Sequence[Hashable] | None = None,
    budget: int = 2_000,
) -> QuotientAlgebra:
    """Push the product along ``phi``; condition (*) is checked on the
    generated words up to ``budget`` and raises ``ConditionStarFails``."""
    if set(phi) != set(alg.carrier):
        raise ValueError("phi must be defined on the whole carrier")
    if T is None:
        T = list(dict.fromkeys(phi[a] for a in alg.carrier))
    T = list(T)
    if not T or not set(phi.values()) <= set(T):
        raise ValueError("phi must map into a nonempty T")
    q = QuotientAlgebra(alg, phi, T)
    for w in enumerate_words(T, 3, DEFAULT_EXPONENTS, alg.supports_star)[:budget]:
        try:
            q.evaluate(w)
        except Undefined:
            pass
    return q


# -- endpoint products ----------------------------------------------------------------------------------------------


class EndpointsAlgebra(InfSemigroup):
    """Products read off the endpoints of the index: first and last letters,
    with ``s0`` standing in for a missing minimum and ``s1`` for a missing
    maximum."""

    completeness_class = "complete-on-encodable"
    supports_star = True
    supports_omega = True

    def __init__(self, S: FinAlgebra, s0: str, s1: str, name: str = ""):
        self.S = S
        self.s0 = s0
        self.s1 = s1
        self.name = name or f"endpoints({S.describe()}, {s0}, {s1})"

    def elements(self):
        return list(self.S.carrier)

    def _m(self, a, b):
        return self.S.bin[(a, b)]

    def evaluate(self, term):
        if isinstance(term, Empty):
            raise Undefined(term, "empty product")
        for x in letters_of(term):
            if x not in self.S._index:
                raise Undefined(Letter(x), "letter outside the carrier")
        if isinstance(term, Letter):
            return term.symbol
        lo = first_letter(term) if has_min(term) else None
        hi = last_letter(term) if has_max(term) else None
        if lo is None and hi is None:
            return self._m(self.s0, self.s1)
        if hi is None:
            return self._m(lo, self.s1)
        if lo is None:
            return self._m(self.s0, hi)
        return self._m(lo, hi)


def endpoints_algebra(S: FinAlgebra, s0: str, s1: str) -> EndpointsAlgebra:
    if not S.is_total():
        raise ValueError("endpoints_algebra needs a total binary table")
    for a, b, c in itertools.product(S.carrier, repeat=3):
        if S.bin[(S.bin[(a, b)], c)] != S.bin[(a, c)] or S.bin[(a, S.bin[(b, c)])] != S.bin[(a, c)]:
            raise IdentityFails((a, b, c))
    if s0 not in S._index or s1 not in S._index:
        raise ValueError("s0 and s1 must be carrier elements")
    return EndpointsAlgebra(S, s0, s1)


def left_projection(S: Sequence[str], s0: str) -> EndpointsAlgebra:
    """The product is the first letter, or ``s0`` when there is no first position."""
    S = list(S)
    if s0 not in S:
        raise ValueError("s0 must belong to S")
    band = FinAlgebra(S, {(a, b): a for a in S for b in S}, {}, name="left-zero")
    return EndpointsAlgebra(band, s0, s0, name=f"left-projection({','.join(S)}; {s0})")


# -- inflationary maps -----------------------------------------------------------------------------------------------


class MonotonePoset:
    """A finite partial order, validated on construction."""

    def __init__(self, elements: Sequence[Hashable], leq: Iterable[tuple] | Callable[[Any, Any], bool]):
        self.elements = list(elements)
        if callable(leq):
            rel = {(a, b) for a in self.elements for b in self.elements if leq(a, b)}
        else:
            rel = set(leq) | {(a, a) for a in self.elements}
            # transitive closure
            changed = True
            while changed:
                changed = False
                for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        for a in self.elements:
            if (a, a) not in rel:
                raise ValueError(f"order is not reflexive at {a!r}")
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise ValueError(f"order is not antisymmetric at {a!r}, {b!r}")
            for c in self.elements:
                if (b, c) in rel and (a, c) not in rel:
                    raise ValueError("order is not transitive")
        self.rel = frozenset(rel)

    @classmethod
    def chain(cls, n: int) -> "MonotonePoset":
        return cls(list(range(n)), lambda a, b: a <= b)

    def leq(self, a, b) -> bool:
        return (a, b) in self.rel

    def up(self, a) -> list:
        return [b for b in self.elements if self.leq(a, b)]


class InflationaryAlgebra(InfSemigroup):
    """Inflationary self-maps under diagram-order composition, with limits
    taken as pointwise suprema of the increasing chain of partial products.

    A map is a tuple listing the image of each poset element in order.
    """

    completeness_class = "ordinal"
    supports_star = False
    supports_omega = True

    def __init__(self, P: MonotonePoset):
        self.P = P
        self.idx = {x: i for i, x in enumerate(P.elements)}
        self.name = f"inflationary({len(P.elements)}-element poset)"

    def elements(self):
        return [tuple(f) for f in itertools.product(*(self.P.up(x) for x in self.P.elements))]

    def identity(self) -> tuple:
        return tuple(self.P.elements)

    def check_map(self, f) -> tuple:
        f = tuple(f)
        if len(f) != len(self.P.elements):
            raise NotInflationary(f"{f!r} has the wrong arity")
        for x, fx in zip(self.P.elements, f):
            if fx not in self.idx or not self.P.leq(x, fx):
                raise NotInflationary(f"{f!r} sends {x!r} below itself")
        return f

    def apply(self, f, x):
        return f[self.idx[x]]

    def compose(self, f, g) -> tuple:
        # diagram order: first f, then g
        return tuple(self.apply(g, self.apply(f, x)) for x in self.P.elements)

    def stabilize(self, f) -> tuple:
        out = []
        for x in self.P.elements:
            y = self.apply(f, x)
            while self.apply(f, y) != y:
                y = self.apply(f, y)
            out.append(y)
        return tuple(out)

    def evaluate(self, term):
        if isinstance(term, Empty):
            return self.identity()
        return fold_term(term, leaf=self.check_map, mul=self.compose, omega=self.stabilize)

    def product_seq(self, s: PiecewiseSeq) -> tuple:
        return self.evaluate(concat(*(power(Letter(self.check_map(f)), n) for n, f in s)))


def inflationary_algebra(P: MonotonePoset) -> InflationaryAlgebra:
    return InflationaryAlgebra(P)


# -- convergent series -------------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesSeq:
    """A finite prefix of rationals, optionally followed by ``a * r**k`` for k >= 0."""

    prefix: tuple[Fraction, ...] = ()
    tail: tuple[Fraction, Fraction] | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(Fraction(x) for x in self.prefix))
        if self.tail is not None:
            a, r = self.tail
            object.__setattr__(self, "tail", (Fraction(a), Fraction(r)))
        if not self.prefix and self.tail is None:
            raise ValueError("a series needs at least one term")

    @property
    def infinite(self) -> bool:
        return self.tail is not None

    def convergent(self) -> bool:
        if self.tail is None:
            return True
        a, r = self.tail
        return a == 0 or abs(r) < 1

    def term(self, k: int) -> Fraction:
        if k < len(self.prefix):
            return self.prefix[k]
        if self.tail is None:
            raise IndexError(k)
        a, r = self.tail
        return a * r ** (k - len(self.prefix))

    def terms(self, n: int) -> list[Fraction]:
        if self.tail is None:
            return list(self.prefix[:n])
        return [self.term(k) for k in range(n)]


def series_sum(s: SeriesSeq) -> Fraction:
    if not s.convergent():
        raise Undefined(Letter(s), "divergent series")
    total = sum(s.prefix, Fraction(0))
    if s.tail is not None:
        a, r = s.tail
        if a != 0:
            total += a / (1 - r)
    return total


def pair_tail(s: SeriesSeq) -> SeriesSeq:
    """Group the tail terms in consecutive pairs."""
    if s.tail is None:
        return s
    a, r = s.tail
    return SeriesSeq(s.prefix, (a * (1 + r), r * r))


def shift_tail(s: SeriesSeq) -> SeriesSeq:
    """Move the first tail term into the prefix."""
    if s.tail is None:
        return s
    a, r = s.tail
    return SeriesSeq(s.prefix + (a,), (a * r, r))


def series_product(s: PiecewiseSeq) -> Fraction:
    """Sum of the concatenation of runs of series.

    Defined only when the whole index has order type at most w (a series in
    the classical sense) and it converges.
    """
    runs = list(s)
    total = Fraction(0)
    for i, (length, block) in enumerate(runs):
        if not isinstance(block, SeriesSeq):
            block = SeriesSeq((Fraction(block),))
        last = i == len(runs) - 1
        if length.is_finite():
            n = int(length)
            if block.infinite:
                if not last or n != 1:
                    raise Undefined(Letter(block), "index longer than w")
                total += series_sum(block)
            else:
                total += n * sum(block.prefix, Fraction(0))
            continue
        if length != OMEGA or not last or block.infinite:
            raise Undefined(Letter(block), "index longer than w")
        if any(x != 0 for x in block.prefix):
            raise Undefined(Letter(block), "terms do not tend to zero")
    return total


class SeriesInstance(InfSemigroup):
    """Rationals with finite sums and convergent w-indexed sums over words.

    On term-encodable words an w-indexed sum is ultimately periodic, so it
    converges exactly when the period is all zeros.  Index types other than
    finite and w carry no classical sum and stay undefined.
    """

    completeness_class = "lt-omega"
    supports_star = False
    supports_omega = True

    def __init__(self, sample: Sequence = (Fraction(-1), Fraction(0), Fraction(1), Fraction(1, 2))):
        self.sample = [Fraction(x) for x in sample]
        self.name = "series"

    def elements(self):
        return list(self.sample)

    def render_element(self, x):
        return str(x)

    def evaluate(self, term):
        if isinstance(term, Empty) or not is_ordinal_term(term):
            raise Undefined(term, "no classical sum over this index")
        n = word_length(term)
        if n.is_finite():
            return _finite_sum(term)
        if n != OMEGA:
            raise Undefined(term, "index longer than w")
        blocks, tail = omega_blocks(term)
        (prefix, period), = blocks
        if any(Fraction(x) != 0 for x in period):
            raise Undefined(term, "terms do not tend to zero")
        return sum((Fraction(x) for x in prefix), Fraction(0))


def _finite_sum(t: Term) -> Fraction:
    if isinstance(t, Letter):
        return Fraction(t.symbol)
    if isinstance(t, Concat):
        return sum((_finite_sum(p) for p in t.parts), Fraction(0))
    return _finite_sum(t.base) * int(t.exponent)
