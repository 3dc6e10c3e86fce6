"""Executable checks for the main statements about absorbing elements,
inverses and identities."""

from __future__ import annotations

import itertools
from typing import Hashable, Iterator, Sequence

from .algebra import FinAlgebra, InfSemigroup, Undefined
from .audit import (
    CheckReport,
    Evaluator,
    Verdict,
    audit_suite,
    check_axiom,
    enumerate_words,
    fully_absorbing_candidates,
    suite_passes,
    DEFAULT_EXPONENTS,
)
from .ordinal import OMEGA
from .orderword import Letter, concat, letters_of, power, render_word

__all__ = [
    "NotCommutative",
    "AbsorptionFails",
    "NoNeutral",
    "krob_omega",
    "abeba_hypotheses",
    "verify_abeba",
    "abebarmk_algebra",
    "verify_notut",
    "abe_statement_check",
    "neutral_elements",
    "two_sided_absorbing",
    "commutative_complete_algebras",
]


class NotCommutative(ValueError):
    def __init__(self, report: CheckReport):
        self.report = report
        super().__init__("commutativity audit failed: " + report.render())


class AbsorptionFails(ValueError):
    def __init__(self, omega_elem, witness: str, report: CheckReport | None = None):
        self.element = omega_elem
        self.witness = witness
        self.report = report
        super().__init__(f"{omega_elem!r} is not absorbing: {witness}")


class NoNeutral(ValueError):
    pass


def _L(x):
    return Letter(x)


# -- absorbing element of a commutative complete algebra ------------------------------------------


def krob_omega(
    alg: InfSemigroup,
    order: Sequence | None = None,
    budget: int = 2_000,
    seed: int = 0,
) -> Hashable:
    """The product of every element repeated omega times, checked absorbing.

    Raises ``NotCommutative`` when the (C) audit fails and
    ``AbsorptionFails`` when the result does not absorb, which means the
    input does not live up to its completeness claim.
    """
    rep = check_axiom(alg, "C", budget, seed)
    if rep.failed:
        raise NotCommutative(rep)
    cls = check_axiom(alg, "CLASS", budget, seed)
    elems = list(order) if order is not None else list(alg.elements())
    try:
        om = alg.evaluate(power(concat(*map(_L, elems)), OMEGA))
    except Undefined as exc:
        raise AbsorptionFails(None, f"generating word undefined: {exc}", cls) from exc
    if cls.failed:
        raise AbsorptionFails(om, "completeness claim refuted", cls)
    ev = Evaluator(alg)
    for a in alg.elements():
        for w in (concat(_L(om), _L(a)), concat(_L(a), _L(om))):
            v = ev.inst.try_evaluate(w)
            if v != om:
                raise AbsorptionFails(om, f"{render_word(w)} -> {v!r}")
    for w in enumerate_words(alg.elements(), 3, DEFAULT_EXPONENTS, alg.supports_star)[:budget]:
        if om in letters_of(w):
            v = alg.try_evaluate(w)
            if v is not None and v != om:
                raise AbsorptionFails(om, f"{render_word(w)} -> {v!r}")
    return om


def _commutative_tables(carrier: Sequence[str]) -> Iterator[dict]:
    pairs = [(a, b) for i, a in enumerate(carrier) for b in carrier[i:]]
    for vals in itertools.product(carrier, repeat=len(pairs)):
        t = {}
        for (a, b), v in zip(pairs, vals):
            t[(a, b)] = t[(b, a)] = v
        if all(t[(t[(a, b)], c)] == t[(a, t[(b, c)])] for a in carrier for b in carrier for c in carrier):
            yield t


def _omega_consistent(carrier, t, om) -> bool:
    # necessary conditions in any commutative complete algebra
    for x in carrier:
        o = om[x]
        if t[(x, o)] != o or t[(o, o)] != o or om[t[(x, x)]] != o or om[o] != o:
            return False
        for y in carrier:
            if om[t[(x, y)]] != t[(o, om[y])]:
                return False
    return True


def commutative_complete_algebras(
    max_size: int = 3,
    budget: int = 500,
    axioms: Sequence[str] = ("U", "ASSOC3", "WILKE", "N_PART", "C", "CLASS"),
) -> Iterator[FinAlgebra]:
    """Every total commutative table algebra up to ``max_size`` elements
    whose omega table survives the audits, with labels 0..n-1."""
    for n in range(1, max_size + 1):
        carrier = [str(i) for i in range(n)]
        for t in _commutative_tables(carrier):
            for vals in itertools.product(carrier, repeat=n):
                om = dict(zip(carrier, vals))
                if not _omega_consistent(carrier, t, om):
                    continue
                alg = FinAlgebra(carrier, t, om, completeness_class="complete-on-encodable")
                if suite_passes(audit_suite(alg, axioms, budget)):
                    yield alg


# -- ab = e = ba ---------------------------------------------------------------------------------------


def abeba_hypotheses(alg: InfSemigroup, a, b, e) -> dict[str, bool]:
    ev = alg.try_evaluate
    ab = concat(_L(a), _L(b))
    return {
        "ab=e": ev(ab) == e,
        "ba=e": ev(concat(_L(b), _L(a))) == e,
        "ae=a": ev(concat(_L(a), _L(e))) == a,
        "be=b": ev(concat(_L(b), _L(e))) == b,
        "e^w=e": ev(power(_L(e), OMEGA)) == e,
        "(ab)^w defined": ev(power(ab, OMEGA)) is not None,
    }


def verify_abeba(alg: InfSemigroup) -> CheckReport:
    """Every triple meeting the hypotheses must have a = e = b."""
    qualifying = 0
    n = 0
    subject = alg.describe()
    for a, b, e in itertools.product(alg.elements(), repeat=3):
        n += 1
        if not all(abeba_hypotheses(alg, a, b, e).values()):
            continue
        qualifying += 1
        if a == e == b:
            continue
        # replay the derivation to locate the broken regrouping
        ab_w = alg.try_evaluate(power(concat(_L(a), _L(b)), OMEGA))
        a_ba_w = alg.try_evaluate(concat(_L(a), power(concat(_L(b), _L(a)), OMEGA)))
        wit = {
            "a": alg.render_element(a),
            "b": alg.render_element(b),
            "e": alg.render_element(e),
            "(ab)^w": repr(ab_w),
            "a(ba)^w": repr(a_ba_w),
        }
        return CheckReport("ABEBA", Verdict.FAIL, n, wit, note="internal inconsistency: an (N) instance fails", subject=subject)
    return CheckReport("ABEBA", Verdict.PASS, n, note=f"{qualifying} qualifying triples, all trivial", subject=subject)


def abebarmk_algebra() -> FinAlgebra:
    """Two elements: e absorbing, b idempotent."""
    t = {("b", "b"): "b", ("b", "e"): "e", ("e", "b"): "e", ("e", "e"): "e"}
    return FinAlgebra(["b", "e"], t, {"b": "b", "e": "e"}, name="b-e absorbing")


# -- no right inverse of an omega power ----------------------------------------------------------------


def neutral_elements(alg: InfSemigroup) -> list:
    ev = alg.try_evaluate
    elems = alg.elements()
    return [
        e
        for e in elems
        if all(ev(concat(_L(e), _L(x))) == x and ev(concat(_L(x), _L(e))) == x for x in elems)
    ]


def verify_notut(alg: InfSemigroup, strict: bool = False) -> CheckReport:
    """For neutral e and a != e, the omega power of a has no right inverse."""
    subject = alg.describe()
    neutrals = neutral_elements(alg)
    if not neutrals:
        if strict:
            raise NoNeutral(subject)
        return CheckReport("NOTUT", Verdict.PASS, 0, note="vacuous: no neutral element", subject=subject)
    n = 0
    for e in neutrals:
        for a in alg.elements():
            if a == e:
                continue
            aw = power(_L(a), OMEGA)
            if alg.try_evaluate(aw) is None:
                continue
            for c in alg.elements():
                n += 1
                if alg.try_evaluate(concat(aw, _L(c))) == e:
                    wit = {"a": alg.render_element(a), "c": alg.render_element(c), "e": alg.render_element(e)}
                    return CheckReport("NOTUT", Verdict.FAIL, n, wit, note="internal inconsistency", subject=subject)
    note = "" if n else "vacuous: no omega power of a non-neutral element is defined"
    return CheckReport("NOTUT", Verdict.PASS, n, note=note, subject=subject)


# -- ab = e with e a complete identity -------------------------------------------------------------------


def abe_statement_check(alg: InfSemigroup, budget: int = 2_000, seed: int = 0) -> CheckReport:
    """Detect a, b != e with ab = e for a complete identity e."""
    subject = alg.describe()
    ev = alg.try_evaluate
    notes = []
    assoc = check_axiom(alg, "ASSOC3", budget, seed)
    if assoc.failed:
        return CheckReport("ABE", Verdict.NOT_EXHIBITED, 0, assoc.witness, note="not associative", subject=subject)
    for e in alg.elements():
        pairs = [
            (a, b)
            for a in alg.elements()
            for b in alg.elements()
            if a != e and b != e and ev(concat(_L(a), _L(b))) == e
        ]
        if not pairs:
            continue
        rep = check_axiom(alg, "ID", budget, seed, identity=e)
        if rep.failed:
            notes.append(f"{alg.render_element(e)} fails ID at {rep.witness.get('word')}")
            continue
        a, b = pairs[0]
        wit = {"a": alg.render_element(a), "b": alg.render_element(b), "e": alg.render_element(e)}
        return CheckReport("ABE", Verdict.EXHIBITED, len(pairs), wit, note=f"ID {rep.verdict}", subject=subject)
    return CheckReport("ABE", Verdict.NOT_EXHIBITED, 0, note="; ".join(notes), subject=subject)


# -- absorbing elements without commutativity ----------------------------------------------------------------


def two_sided_absorbing(inst: InfSemigroup, budget: int = 2_000, seed: int = 0) -> list:
    """Elements for which no refuting product was found."""
    return [z for z, w in fully_absorbing_candidates(inst, budget, seed).items() if w is None]
