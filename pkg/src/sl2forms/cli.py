"""Command line front end.

Exit codes: 0 success, 1 domain failure (invalid structure or embedding,
table mismatch), 2 usage or parse error.  JSON goes to stdout with sorted
keys; SL2FORMS_JSON_INDENT sets the indentation (0 or "none" for one line).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import reproduce_extension_table, reproduce_h1_table, reproduce_structure_table
from .descent import GammaAction, check_extension
from .embeddings import (EmbeddingParseError, embedding_from_json, is_complete, is_quasiprojective,
                         validate_embedding)
from .equipment import diagram
from .realhom import (Outcome, describe, h1_table, sigma_c_locus_nonempty, structures_equivalent,
                      validate_structure)
from .sl2core import (Label, SigmaKind, build_subgroup, normalizer_quotient, parse_matrix,
                      standard_generators)

OK, DOMAIN_FAILURE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _indent() -> int | None:
    raw = os.environ.get("SL2FORMS_JSON_INDENT", "2").strip().lower()
    if raw in ("", "0", "none"):
        return None
    try:
        return max(int(raw), 0)
    except ValueError:
        return 2


def emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=_indent(), ensure_ascii=False) + "\n")


def _label(text: str) -> Label:
    try:
        return Label.parse(text)
    except (ValueError, AssertionError) as exc:
        raise UsageError(f"label: {exc}") from None


def _sigma(text: str) -> SigmaKind:
    try:
        return SigmaKind.parse(text)
    except ValueError as exc:
        raise UsageError(f"sigma: {exc}") from None


def _matrix(text: str):
    try:
        return parse_matrix(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"matrix: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"matrix: not valid JSON: {exc}") from None


def _embedding(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"embedding file: {exc}") from None
    try:
        return embedding_from_json(text)
    except EmbeddingParseError as exc:
        raise UsageError(f"embedding: {exc}") from None


# commands -----------------------------------------------------------------------

def cmd_group_info(args, out) -> int:
    label = _label(args.label)
    H = build_subgroup(label)
    q = normalizer_quotient(H)
    emit({"label": str(label), "order": len(H),
          "generators": [g.to_json() for g in standard_generators(label)],
          "normalizer": {"kind": q.kind.value, "quotient_order": q.order,
                         "representatives": [describe(r) for r in q.representatives]}}, out)
    return OK


def cmd_h1(args, out) -> int:
    sigma, label = _sigma(args.sigma), _label(args.label)
    emit([c.to_json() for c in h1_table(sigma, label)], out)
    return OK


def cmd_structure_check(args, out) -> int:
    sigma, label, t = _sigma(args.sigma), _label(args.label), _matrix(args.twist)
    H = build_subgroup(label)
    v = validate_structure(sigma, H, t)
    result = {"group": str(label), "sigma": sigma.value, "twist": t.to_json(), "valid": v.valid}
    if not v.valid:
        result["reason"] = v.reason
        result["witness"] = v.witness.to_json() if v.witness is not None else None
        emit(result, out)
        return DOMAIN_FAILURE
    cls = None
    for c in h1_table(sigma, label):
        if structures_equivalent(sigma, H, c.representative, t).outcome is Outcome.EQUIVALENT:
            cls = c.label
            break
    result["class"] = cls
    result["real_locus_nonempty"] = sigma_c_locus_nonempty(H, t) if sigma is SigmaKind.COMPACT else None
    emit(result, out)
    return OK


def cmd_diagram(args, out) -> int:
    dg = diagram(_label(args.label))
    if args.format == "ascii":
        out.write(dg.ascii() + "\n")
    else:
        emit(dg.to_json(), out)
    return OK


def cmd_embedding_check(args, out) -> int:
    emb = _embedding(args.file)
    report = validate_embedding(emb)
    result = report.to_json()
    result["group"] = str(emb.group)
    result["complete"] = is_complete(emb) if report.valid else None
    result["quasiprojective"] = is_quasiprojective(emb) if report.valid else None
    emit(result, out)
    return OK if report.valid else DOMAIN_FAILURE


def cmd_extend(args, out) -> int:
    sigma, label, t = _sigma(args.sigma), _label(args.label), _matrix(args.twist)
    emb = _embedding(args.file)
    if emb.group != label:
        raise UsageError(f"embedding is of SL2/{emb.group}, not SL2/{label}")
    H = build_subgroup(label)
    v = validate_structure(sigma, H, t)
    if not v.valid:
        emit({"error": "invalid real structure", "reason": v.reason}, out)
        return DOMAIN_FAILURE
    report = validate_embedding(emb)
    if not report.valid:
        emit({"error": "invalid embedding", "report": report.to_json()}, out)
        return DOMAIN_FAILURE
    verdict = check_extension(GammaAction.of(sigma, H, t), emb)
    result = verdict.to_json()
    result.update({"group": str(label), "sigma": sigma.value, "twist": t.to_json()})
    emit(result, out)
    return OK


_TABLES = {"h1": reproduce_h1_table, "extensions": reproduce_extension_table,
           "structures": reproduce_structure_table}


def cmd_reproduce(args, out) -> int:
    names = list(_TABLES) if args.table == "all" else [args.table]
    reports = [_TABLES[n]() for n in names]
    if args.json:
        emit({"all_match": all(r.all_match for r in reports),
              "tables": [r.to_json() for r in reports]}, out)
    else:
        for r in reports:
            bad = r.mismatches()
            out.write(f"{r.name}: {len(r.rows) - len(bad)}/{len(r.rows)} rows match\n")
            for row in bad:
                out.write(f"  MISMATCH {row.key}: expected {row.expected}, computed {row.computed}"
                          f"{' (' + row.detail + ')' if row.detail else ''}\n")
    return OK if all(r.all_match for r in reports) else DOMAIN_FAILURE


# parser ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sl2forms", description="Real structures on SL2(C)/H and their extension to embeddings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    group = sub.add_parser("group", help="finite subgroups of SL2(C)")
    gsub = group.add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = gsub.add_parser("info", help="order, generators and normalizer of a subgroup")
    info.add_argument("label", help="A<n>, D<n> (n >= 4), E6, E7 or E8")
    info.set_defaults(func=cmd_group_info)

    h1 = sub.add_parser("h1", help="equivalence classes of real structures")
    h1.add_argument("sigma", help="split or compact")
    h1.add_argument("label")
    h1.set_defaults(func=cmd_h1)

    st = sub.add_parser("structure", help="real structure gH -> sigma(g) t H")
    ssub = st.add_subparsers(dest="action", required=True, parser_class=_Parser)
    chk = ssub.add_parser("check", help="validity, class and compact real locus")
    chk.add_argument("sigma")
    chk.add_argument("label")
    chk.add_argument("twist", help="named matrix (I2, -I2, e, f, d, omegaN, products with *) or JSON")
    chk.set_defaults(func=cmd_structure_check)

    dg = sub.add_parser("diagram", help="colors and spokes of SL2/H")
    dg.add_argument("label")
    dg.add_argument("--format", choices=("json", "ascii"), default="json")
    dg.set_defaults(func=cmd_diagram)

    emb = sub.add_parser("embedding", help="colored equipment of an embedding")
    esub = emb.add_subparsers(dest="action", required=True, parser_class=_Parser)
    echk = esub.add_parser("check", help="validate an embedding file")
    echk.add_argument("file")
    echk.set_defaults(func=cmd_embedding_check)

    ext = sub.add_parser("extend", help="does a real structure extend to an embedding")
    ext.add_argument("sigma")
    ext.add_argument("label")
    ext.add_argument("twist")
    ext.add_argument("file")
    ext.set_defaults(func=cmd_extend)

    rep = sub.add_parser("reproduce", help="recompute the classification tables")
    rep.add_argument("table", choices=("h1", "extensions", "structures", "all"))
    rep.add_argument("--json", action="store_true", help="emit every row as JSON")
    rep.set_defaults(func=cmd_reproduce)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"sl2forms: error: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())
