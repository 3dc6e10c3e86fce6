"""Command-line front end.

Every command prints deterministic ``key=value`` lines (or JSON with
``--json``).  Exit status: 0 on success or pass, 1 on failure or an
undefined product, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Sequence

from .algebra import AlgebraFormatError, FinAlgebra, Undefined
from .audit import AXIOMS, FULL_SUITE, UnsupportedAxiom, audit_suite, check_axiom, replay
from .constructions import (
    NarrViolated,
    adjoin_identity,
    direct_product,
    omega_completion,
    powerset_concat,
    powerset_lift,
)
from .limits import FiniteMeetSemilattice, PumpedFamily, inflim_lattice, string_inflim
from .ordinal import OrdinalParseError, parse_ordinal, render_ordinal
from .orderword import (
    BadIndex,
    EqVerdict,
    PositionOutOfRange,
    WordParseError,
    concat,
    letter_at,
    letters_of,
    normalize,
    parse_word,
    render_word,
    word_eq,
    word_length,
)
from .theorems import AbsorptionFails, NotCommutative, krob_omega

__all__ = ["main", "build_parser", "StaleWitness"]


class StaleWitness(Exception):
    pass


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.fields: dict = {}

    def put(self, **kw):
        self.fields.update(kw)

    def emit(self):
        if not self.fields:
            return
        if self.as_json:
            print(json.dumps(self.fields, sort_keys=True))
        else:
            for k, v in self.fields.items():
                print(f"{k}={v}")


def _sha(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- verbs ------------------------------------------------------------------------------------------------


def cmd_ord(args, out: _Out) -> int:
    out.put(value=render_ordinal(parse_ordinal(args.expr)))
    return 0


def cmd_word(args, out: _Out) -> int:
    op = args.op
    if op == "at":
        if len(args.words) != 2:
            raise ValueError("word at needs a word and a position")
        out.put(letter=letter_at(parse_word(args.words[0]), parse_ordinal(args.words[1])))
        return 0
    ws = [parse_word(t) for t in args.words]
    if op == "eq":
        if len(ws) != 2:
            raise ValueError("word eq needs two words")
        v = word_eq(*ws)
        out.put(verdict=v.name)
        return 0 if v is EqVerdict.EQUAL else 1
    if op == "concat":
        out.put(word=render_word(normalize(concat(*ws))))
        return 0
    if op == "len":
        out.put(length=render_ordinal(word_length(ws[0])))
        return 0
    out.put(word=render_word(normalize(ws[0])))
    return 0


def cmd_alg(args, out: _Out) -> int:
    alg = FinAlgebra.load(args.file)
    if args.op == "eval":
        w = parse_word(args.word)
        try:
            out.put(value=alg.render_element(alg.evaluate(w)))
            return 0
        except Undefined as exc:
            out.put(value="undefined", witness=render_word(exc.witness))
            return 1
    if args.axiom:
        reports = [check_axiom(alg, a, args.budget, args.seed) for a in args.axiom]
    else:
        reports = audit_suite(alg, FULL_SUITE, args.budget, args.seed)
    if args.report:
        doc = {
            "algebra": str(Path(args.file).resolve()),
            "sha256": _sha(args.file),
            "seed": args.seed,
            "reports": [r.to_json() for r in reports],
        }
        Path(args.report).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if out.as_json:
        print(json.dumps([r.to_json() for r in reports], sort_keys=True))
    else:
        for r in reports:
            print(r.render())
    return 1 if any(r.failed for r in reports) else 0


_KINDS = ("completion", "identity", "powerset-concat", "powerset-lift", "product")


def cmd_construct(args, out: _Out) -> int:
    algs = [FinAlgebra.load(f) for f in args.files]
    kind = args.kind
    if kind != "product" and len(algs) != 1:
        raise ValueError(f"{kind} takes exactly one algebra file")
    try:
        if kind == "completion":
            res = omega_completion(algs[0], args.budget, args.seed)
        elif kind == "identity":
            res = adjoin_identity(algs[0])
        elif kind == "powerset-concat":
            res = powerset_concat(algs[0])
        elif kind == "powerset-lift":
            res = powerset_lift(algs[0], args.budget, args.seed)
        else:
            res = direct_product(algs)
    except NarrViolated as exc:
        out.put(error="NarrViolated", **{k: v for k, v in (exc.report.witness or {}).items()})
        return 1
    text = res.dumps()
    if args.output:
        Path(args.output).write_text(text + "\n")
        out.put(kind=kind, carrier=len(res.carrier), output=args.output)
    else:
        print(text)
    return 0


def cmd_krob(args, out: _Out) -> int:
    alg = FinAlgebra.load(args.file)
    try:
        om = krob_omega(alg, budget=args.budget, seed=args.seed)
    except NotCommutative as exc:
        out.put(error="NotCommutative", **(exc.report.witness or {}))
        return 1
    except AbsorptionFails as exc:
        out.put(error="AbsorptionFails", witness=exc.witness)
        return 1
    out.put(absorbing=alg.render_element(om))
    return 0


def _load_lattice(path: str) -> FiniteMeetSemilattice:
    data = json.loads(Path(path).read_text())
    unknown = set(data) - {"elements", "meet"}
    if unknown:
        raise ValueError(f"unknown lattice keys {sorted(unknown)}")
    elems = [str(x) for x in data["elements"]]
    meet = {}
    for k, v in data["meet"].items():
        a, b = k.split(",")
        meet[(a, b)] = meet[(b, a)] = str(v)
    for a in elems:
        meet.setdefault((a, a), a)
    return FiniteMeetSemilattice(elems, meet)


def cmd_inflim(args, out: _Out) -> int:
    if args.op == "string":
        parts = args.args
        if len(parts) == 1:
            fam = PumpedFamily.parse(parts[0])
        elif len(parts) == 3:
            fam = PumpedFamily(*parts)
        else:
            raise ValueError("inflim string takes 'u | v | w' or three arguments")
        out.put(limit=render_word(string_inflim(fam)))
        return 0
    if args.chain:
        n = args.chain
        Q = FiniteMeetSemilattice([str(i) for i in range(n)], lambda a, b: min(a, b, key=int))
        rest = args.args
    else:
        if len(args.args) != 2:
            raise ValueError("inflim lattice takes FILE WORD or --chain N WORD")
        Q = _load_lattice(args.args[0])
        rest = args.args[1:]
    if len(rest) != 1:
        raise ValueError("inflim lattice needs one word")
    w = parse_word(rest[0])
    for x in set(letters_of(w)) - set(Q.elements):
        raise ValueError(f"letter {x!r} is not in the semilattice")
    out.put(limit=inflim_lattice(Q, w))
    return 0


def cmd_witness(args, out: _Out) -> int:
    doc = json.loads(Path(args.file).read_text())
    path = doc["algebra"]
    if not Path(path).exists() or _sha(path) != doc["sha256"]:
        raise StaleWitness(f"{path} changed since the report was written")
    alg = FinAlgebra.load(path)
    fails = [r for r in doc["reports"] if r["verdict"] == "FAIL"]
    confirmed = all(replay(alg, r) for r in fails)
    out.put(reports=len(doc["reports"]), failures=len(fails), confirmed=str(confirmed).lower())
    return 0 if confirmed else 1


# -- parser -------------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="infsemi", description="Infinitary semigroup toolkit")
    p.add_argument("--json", action="store_true", help="print JSON instead of key=value lines")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("ord", help="ordinal arithmetic")
    s.add_argument("op", choices=["eval"])
    s.add_argument("expr")
    s.set_defaults(func=cmd_ord)

    s = sub.add_parser("word", help="transfinite words")
    s.add_argument("op", choices=["eq", "at", "concat", "len", "norm"])
    s.add_argument("words", nargs="+")
    s.set_defaults(func=cmd_word)

    s = sub.add_parser("alg", help="evaluate or audit an algebra file")
    asub = s.add_subparsers(dest="op", required=True)
    e = asub.add_parser("eval")
    e.add_argument("file")
    e.add_argument("word")
    e.set_defaults(func=cmd_alg)
    a = asub.add_parser("audit")
    a.add_argument("file")
    a.add_argument("--axiom", action="append", choices=AXIOMS)
    a.add_argument("--budget", type=int, default=10_000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--report", help="write a replayable JSON report")
    a.set_defaults(func=cmd_alg)

    s = sub.add_parser("construct", help="build a new algebra file")
    s.add_argument("kind", choices=_KINDS)
    s.add_argument("files", nargs="*")
    s.add_argument("-o", "--output")
    s.add_argument("--budget", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("krob", help="absorbing element of a commutative complete algebra")
    s.add_argument("file")
    s.add_argument("--budget", type=int, default=2_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_krob)

    s = sub.add_parser("inflim", help="inferior limits")
    s.add_argument("op", choices=["lattice", "string"])
    s.add_argument("args", nargs="+")
    s.add_argument("--chain", type=int, help="use the chain 0 < 1 < ... < N-1")
    s.set_defaults(func=cmd_inflim)

    s = sub.add_parser("witness", help="replay stored witnesses")
    s.add_argument("op", choices=["replay"])
    s.add_argument("file")
    s.set_defaults(func=cmd_witness)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.json)
    try:
        code = args.func(args, out)
    except (OrdinalParseError, WordParseError) as exc:
        out.put(error="ParseError", message=str(exc))
        code = 2
    except StaleWitness as exc:
        out.put(error="StaleWitness", message=str(exc))
        code = 2
    except UnsupportedAxiom as exc:
        out.put(error="UnsupportedAxiom", message=str(exc))
        code = 2
    except (AlgebraFormatError, OSError, ValueError, KeyError, PositionOutOfRange, BadIndex) as exc:
        out.put(error=type(exc).__name__, message=str(exc))
        code = 2
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
