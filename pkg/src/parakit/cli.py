"""Command-line front end.

    parakit check|envelope|saturate|word-eq|kleene|factor|universal <file> [flags]

Exit codes: 0 pass, 1 fail, 2 input error, 3 budget exceeded. Reports are
JSON on stdout with sorted keys and fixed orderings, so identical inputs and
flags give byte-identical output; --timing writes wall-clock to stderr.
The PARAKIT_BUDGET environment variable caps enumerated words (default 1e7).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import algebra as alg
from . import envelope as env
from . import morphisms as mor
from .documents import (build_algebra, build_morphism, document_bounds,
                        jsonable, load_document, parse_word, table_document)
from .errors import BudgetError, InputError, ParakitError

PASS, FAIL, INPUT_ERROR, BUDGET = 0, 1, 2, 3


def _emit(command: str, verdict: str, bound_used: Optional[int] = None,
          witnesses: Optional[list] = None, certificates: Optional[list] = None,
          notes: Optional[dict] = None, extra: Optional[dict] = None) -> None:
    payload = {
        "command": command,
        "verdict": verdict,
        "bound_used": bound_used,
        "witnesses": jsonable(witnesses or []),
        "certificates": jsonable(certificates or []),
        "notes": jsonable(notes or {}),
    }
    if extra:
        payload.update(jsonable(extra))
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_check(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    algebra = build_algebra(doc)
    query, _ = document_bounds(doc, args.query_len, args.work_len)
    reports = {name: alg.Report() for name in ("unit", "laxity", "saturation", "freyd")}
    unit_ok = alg.check_unit(algebra, reports["unit"])
    lax_ok = alg.check_laxity(algebra, query, reports["laxity"])
    sat_ok = alg.check_saturation(algebra, query, reports["saturation"])
    freyd_ok = alg.check_freyd_axioms_direct(algebra, query, reports["freyd"])
    nullary = all(algebra.evaluate(u) is not None for u in algebra.unit_words())
    ok = unit_ok and lax_ok and sat_ok
    witnesses = [w for r in reports.values() for w in r.witnesses]
    _emit("check", "pass" if ok else "fail", query, witnesses, None, {
        "unit": unit_ok, "laxity": lax_ok, "saturation": sat_ok,
        "nullary_total": nullary, "freyd_axioms": freyd_ok,
        "paramonoid": ok and nullary,
    })
    return PASS if ok else FAIL


def cmd_envelope(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    algebra = build_algebra(doc)
    _, work = document_bounds(doc, args.query_len, args.work_len)
    envelope = env.build_envelope(algebra, work)
    classes = []
    certificates = []
    for c in range(envelope.class_count()):
        members = envelope.members(c)
        entry = {"rep": envelope.rep(c), "members": len(members),
                 "distinguished": envelope.distinguished[c]}
        if args.print_classes:
            entry["words"] = members
        classes.append(entry)
        if args.certify:
            rep = envelope.rep(c)
            for member in members:
                if member == rep:
                    continue
                chain = envelope.congruence.certificate(member, rep)
                certificates.append({"from": member, "to": rep,
                                     "steps": [s for _, s in chain or []]})
    um = env.unit_map(envelope)
    _emit("envelope", "pass", work, None, certificates, {
        "classes": len(classes), "distinguished": sum(envelope.distinguished),
        "unit_injective": um.injective,
    }, {"class_table": classes})
    return PASS


def cmd_saturate(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    algebra = build_algebra(doc)
    query, work = document_bounds(doc, args.query_len, args.work_len)
    table = env.saturate(algebra, query, work)
    out_doc = table_document(table)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            json.dump(out_doc, handle, indent=2, sort_keys=True)
            handle.write("\n")
    recheck = alg.check_saturation(table, query)
    _emit("saturate", "pass" if recheck else "fail", query, None, None, {
        "entries": len(out_doc["entries"]), "saturation_recheck": recheck,
        "written_to": args.output,
    }, {"document": None if args.output else out_doc})
    return PASS if recheck else FAIL


def cmd_word_eq(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    algebra = build_algebra(doc)
    _, work = document_bounds(doc, args.query_len, args.work_len)
    w1, w2 = parse_word(args.word1), parse_word(args.word2)
    cong = env.congruence_close(algebra, work)
    equal = env.word_eq(cong, w1, w2)
    certificates = []
    if equal and args.certify:
        chain = cong.certificate(w1, w2)
        certificates.append({"from": w1, "to": w2,
                             "steps": [s for _, s in chain or []]})
    _emit("word-eq", "pass" if equal else "fail", work,
          None, certificates, {"word1": w1, "word2": w2, "equal": equal})
    return PASS if equal else FAIL


def cmd_kleene(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    morphism = build_morphism(doc)
    query, _ = document_bounds(doc, args.query_len, args.work_len)
    report = alg.Report()
    ok = mor.is_kleene(morphism, query, report)
    _emit("kleene", "pass" if ok else "fail", query, report.witnesses, None,
          {"injective": morphism.is_injective()})
    return PASS if ok else FAIL


def cmd_factor(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    morphism = build_morphism(doc)
    query, _ = document_bounds(doc, args.query_len, args.work_len)
    epi, kleene = mor.factor(morphism, query)
    lift_entries = {w: kleene.source.evaluate(w)
                    for w in kleene.source.domain_words(query)}
    lift_table = alg.TableAlgebra(kleene.source.carrier, lift_entries,
                                  max(query, 1))
    _emit("factor", "pass", query, None, None, {
        "epi_map": list(epi.table),
        "epi_surjective": epi.is_surjective(),
        "kleene_map": list(kleene.table),
        "image_members": list(kleene.table),
    }, {"lift_snapshot": table_document(lift_table)})
    return PASS


def cmd_universal(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    algebra = build_algebra(doc)
    target_doc = load_document(args.target)
    if target_doc["kind"] != "monoid_subset":
        raise InputError("universal: the target must be a monoid_subset document")
    target = build_algebra(target_doc)
    assert isinstance(target, alg.InducedAlgebra)
    query, work = document_bounds(doc, args.query_len, args.work_len)
    report = alg.Report()
    result = env.check_universal_property(
        algebra, (target.monoid, target.subset), query, work, report)
    _emit("universal", "pass" if result.ok else "fail", query, None, None,
          report.notes)
    return PASS if result.ok else FAIL


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parakit",
        description="Checkers and constructions for finite partial algebras, "
                    "paramonoids and paracategories.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, target: bool = False) -> None:
        p.add_argument("file", help="input JSON document")
        if target:
            p.add_argument("--target", required=True,
                           help="target monoid_subset document")
        p.add_argument("--query-len", type=int, default=None)
        p.add_argument("--work-len", type=int, default=None)
        p.add_argument("--timing", action="store_true")

    p = sub.add_parser("check", help="unit/laxity/saturation (+ Freyd route)")
    common(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("envelope", help="congruence classes of the envelope")
    common(p)
    p.add_argument("--print-classes", action="store_true")
    p.add_argument("--certify", action="store_true")
    p.set_defaults(run=cmd_envelope)

    p = sub.add_parser("saturate", help="reflection into saturated algebras")
    common(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=cmd_saturate)

    p = sub.add_parser("word-eq", help="congruence of two words")
    common(p)
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--certify", action="store_true")
    p.set_defaults(run=cmd_word_eq)

    p = sub.add_parser("kleene", help="Kleene condition for a morphism document")
    common(p)
    p.set_defaults(run=cmd_kleene)

    p = sub.add_parser("factor", help="epi/Kleene factorisation of a morphism")
    common(p)
    p.set_defaults(run=cmd_factor)

    p = sub.add_parser("universal", help="envelope universal property against a target")
    common(p, target=True)
    p.set_defaults(run=cmd_universal)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.run(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (InputError, ParakitError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    if args.timing:
        print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
