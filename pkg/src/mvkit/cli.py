"""Command-line front end and the stable JSON document schema.

Input is an algebra document, one of three shapes:

    {"type": "tables", "size": n, "zero": z, "oplus": [[...]], "neg": [...],
     "labels": [...]?}
    {"type": "product", "orders": [n1, n2, ...]}
    {"type": "full_product", "period": p, "classes": [...],
     "prefix_overrides": {"x": n, ...}, "index_set": {...}}

Every command writes one report document (sorted keys, canonical list
orders, reduced fraction strings) so identical inputs give byte-identical
output.  Exit codes: 0 success, 2 domain-level negative result or failed
precondition, 3 schema error, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .completion import profinite_completion
from .errors import (
    DomainError,
    MVAxiomError,
    ResourceCapError,
    SchemaError,
)
from .finite import (
    DEFAULT_MAX_SIZE,
    FiniteMVAlgebra,
    as_tables,
    boolean_center,
    chain_algebra,
    decompose,
    from_tables,
    product,
)
from .ideals import all_ideals, classify, make_ideal, quotient
from .symbolic import (
    DEFAULT_MAX_TRUNCATION,
    TOP,
    ZERO,
    ConstClass,
    IndexSpec,
    SymbolicElement,
    SymbolicUltrafilter,
    UnboundedClass,
    completion_report,
    decide_strongly_complete,
    in_kernel,
    maximal_ideal_census,
    ultrafilter_limit,
)

SCHEMA_VERSION = "1"


# -- document parsing -------------------------------------------------------


def _expect(cond, message):
    if not cond:
        raise SchemaError(message)


def _int_field(doc, key):
    v = doc.get(key)
    _expect(isinstance(v, int) and not isinstance(v, bool), f"field {key!r} must be an integer")
    return v


def parse_index_spec(doc) -> IndexSpec:
    period = _int_field(doc, "period")
    classes_doc = doc.get("classes")
    _expect(isinstance(classes_doc, list), "field 'classes' must be a list")
    classes = []
    for entry in classes_doc:
        _expect(isinstance(entry, dict), "each class must be an object")
        kind = entry.get("kind")
        if kind == "const":
            classes.append(ConstClass(_int_field(entry, "order")))
        elif kind == "unbounded":
            classes.append(UnboundedClass(_int_field(entry, "step"), _int_field(entry, "start")))
        else:
            raise SchemaError(f"class kind must be 'const' or 'unbounded', got {kind!r}")
    overrides_doc = doc.get("prefix_overrides", {})
    _expect(isinstance(overrides_doc, dict), "field 'prefix_overrides' must be an object")
    overrides = {}
    for key, value in overrides_doc.items():
        _expect(isinstance(key, str) and key.isdigit(), f"override key {key!r} must be a digit string")
        _expect(isinstance(value, int) and not isinstance(value, bool),
                f"override value for {key} must be an integer")
        overrides[int(key)] = value
    index_set = doc.get("index_set")
    _expect(isinstance(index_set, dict), "field 'index_set' must be an object")
    kind = index_set.get("kind")
    if kind == "infinite":
        limit = None
    elif kind == "finite":
        limit = _int_field(index_set, "limit")
    else:
        raise SchemaError(f"index_set kind must be 'finite' or 'infinite', got {kind!r}")
    return IndexSpec(period, classes, overrides, limit)


def parse_algebra_document(doc, max_size=DEFAULT_MAX_SIZE):
    """Returns ("finite", FiniteMVAlgebra) or ("symbolic", IndexSpec).

    Finite presentations are fully validated: tables go through the axiom
    sweep, products are built from verified chains.
    """
    _expect(isinstance(doc, dict), "algebra document must be a JSON object")
    kind = doc.get("type")
    if kind == "tables":
        size = _int_field(doc, "size")
        zero = _int_field(doc, "zero")
        oplus = doc.get("oplus")
        neg = doc.get("neg")
        _expect(isinstance(oplus, list) and all(isinstance(r, list) for r in oplus),
                "field 'oplus' must be a list of rows")
        _expect(all(isinstance(v, int) and not isinstance(v, bool) for r in oplus for v in r),
                "field 'oplus' must contain integers")
        _expect(isinstance(neg, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in neg),
                "field 'neg' must be a list of integers")
        _expect(len(oplus) == size and all(len(r) == size for r in oplus),
                f"field 'oplus' must be a {size}x{size} matrix")
        _expect(len(neg) == size, f"field 'neg' must have {size} entries")
        labels = doc.get("labels")
        if labels is not None:
            _expect(isinstance(labels, list) and len(labels) == size,
                    f"field 'labels' must be a list of {size} strings")
        return "finite", from_tables(size, zero, oplus, neg, labels, max_size=max_size)
    if kind == "product":
        orders = doc.get("orders")
        _expect(isinstance(orders, list), "field 'orders' must be a list")
        _expect(all(isinstance(n, int) and not isinstance(n, bool) and n >= 2 for n in orders),
                "chain orders must be integers >= 2")
        return "finite", product([chain_algebra(n) for n in orders], max_size=max_size)
    if kind == "full_product":
        return "symbolic", parse_index_spec(doc)
    raise SchemaError(f"document type must be 'tables', 'product' or 'full_product', got {kind!r}")


def parse_symbolic_element(doc, spec: IndexSpec) -> SymbolicElement:
    _expect(isinstance(doc, dict), "element must be a JSON object")
    modulus = _int_field(doc, "modulus")
    values_doc = doc.get("class_values")
    _expect(isinstance(values_doc, list), "field 'class_values' must be a list")
    values = []
    for v in values_doc:
        if v in (ZERO, TOP) or (isinstance(v, int) and not isinstance(v, bool)):
            values.append(v)
        else:
            raise SchemaError(f"class value {v!r} must be an integer, 'zero' or 'top'")
    prefix_doc = doc.get("prefix", {})
    _expect(isinstance(prefix_doc, dict), "field 'prefix' must be an object")
    prefix = {}
    for key, value in prefix_doc.items():
        _expect(isinstance(key, str) and key.isdigit(), f"prefix key {key!r} must be a digit string")
        _expect(isinstance(value, int) and not isinstance(value, bool),
                f"prefix value for {key} must be an integer")
        prefix[int(key)] = value
    return SymbolicElement(spec, modulus, prefix, values)


def parse_ultrafilter(text) -> SymbolicUltrafilter:
    parts = text.split(":")
    try:
        if parts[0] == "principal" and len(parts) == 2:
            return SymbolicUltrafilter.principal(int(parts[1]))
        if parts[0] == "free" and len(parts) == 3:
            return SymbolicUltrafilter.free_on_residue(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise SchemaError(f"ultrafilter {text!r}: {exc}") from exc
    raise SchemaError(f"ultrafilter must be 'principal:x' or 'free:r:m', got {text!r}")


# -- serialization ----------------------------------------------------------


def fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def tables_document(algebra: FiniteMVAlgebra) -> dict:
    size, zero, oplus, neg = as_tables(algebra)
    doc = {"type": "tables", "size": size, "zero": zero, "oplus": oplus, "neg": neg}
    if algebra.labels is not None:
        doc["labels"] = list(algebra.labels)
    return doc


def product_document(orders) -> dict:
    return {"type": "product", "orders": [int(n) for n in orders]}


def symbolic_element_document(element: SymbolicElement) -> dict:
    return {
        "modulus": element.modulus,
        "class_values": list(element.class_values),
        "prefix": {str(k): v for k, v in sorted(element.prefix.items())},
    }


def index_spec_document(spec: IndexSpec) -> dict:
    classes = []
    for cls in spec.classes:
        if isinstance(cls, ConstClass):
            classes.append({"kind": "const", "order": cls.order})
        else:
            classes.append({"kind": "unbounded", "step": cls.step, "start": cls.start})
    index_set = {"kind": "infinite"} if spec.is_infinite else {"kind": "finite", "limit": spec.limit}
    return {
        "type": "full_product",
        "period": spec.period,
        "classes": classes,
        "prefix_overrides": {str(k): v for k, v in sorted(spec.prefix_overrides.items())},
        "index_set": index_set,
    }


def _rank_json(rank):
    return rank if rank is None or isinstance(rank, int) else str(rank)


def descriptor_json(desc) -> dict:
    if desc is None:
        return None
    out = {"kind": desc.kind, "rank": _rank_json(desc.rank), "principal": desc.principal}
    if desc.kind == "principal":
        out["index"] = desc.index
    else:
        out["residue"] = desc.residue
        out["modulus"] = desc.modulus
    return out


def _sorted_orders(algebra) -> list:
    if algebra.size == 1:
        return []
    return list(decompose(algebra).sorted_orders)


# -- command handlers -------------------------------------------------------


def _require_finite(parsed, command):
    kind, value = parsed
    if kind != "finite":
        raise DomainError(
            f"command {command!r} applies to finite presentations (tables or product); "
            "got a full_product document")
    return value


def _require_symbolic(parsed, command):
    kind, value = parsed
    if kind != "symbolic":
        raise DomainError(
            f"command {command!r} applies to full_product documents; "
            "got a finite presentation")
    return value


def cmd_verify(args, doc):
    _expect(isinstance(doc, dict), "algebra document must be a JSON object")
    if doc.get("type") == "full_product":
        raise DomainError(
            "command 'verify' applies to finite presentations (tables or product); "
            "got a full_product document")
    try:
        kind, algebra = parse_algebra_document(doc, args.max_size)
    except MVAxiomError as exc:
        payload = {"valid": False, "axiom": exc.axiom, "witness": list(exc.witness)}
        return payload, 2
    if doc.get("type") == "product":
        # re-run the axiom sweep on the assembled tables
        size, zero, oplus, neg = as_tables(algebra)
        from_tables(size, zero, oplus, neg, max_size=args.max_size)
    return {"valid": True, "size": algebra.size}, 0


def cmd_decompose(args, doc):
    algebra = _require_finite(parse_algebra_document(doc, args.max_size), "decompose")
    dec = decompose(algebra)
    return {
        "atoms": list(dec.atoms),
        "chain_orders": list(dec.chain_orders),
        "sorted_orders": list(dec.sorted_orders),
        "iso": [list(t) for t in dec.iso],
        "algebra": product_document(dec.sorted_orders),
    }, 0


def cmd_center(args, doc):
    algebra = _require_finite(parse_algebra_document(doc, args.max_size), "center")
    members, atoms = boolean_center(algebra)
    return {"members": list(members), "atoms": list(atoms), "center_size": len(members)}, 0


def cmd_ideals(args, doc):
    algebra = _require_finite(parse_algebra_document(doc, args.max_size), "ideals")
    out = []
    for ideal in all_ideals(algebra, args.max_size):
        cls = classify(algebra, ideal, args.max_size)
        out.append({
            "members": list(ideal.sorted_members),
            "proper": cls.proper,
            "prime": cls.prime,
            "maximal": cls.maximal,
            "rank": cls.rank,
            "principal_generator": cls.principal_generator,
        })
    return {"count": len(out), "ideals": out}, 0


def cmd_quotient(args, doc):
    algebra = _require_finite(parse_algebra_document(doc, args.max_size), "quotient")
    try:
        members = json.loads(args.ideal)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"--ideal must be a JSON list of element indices: {exc}") from exc
    _expect(isinstance(members, list) and
            all(isinstance(v, int) and not isinstance(v, bool) for v in members),
            "--ideal must be a JSON list of element indices")
    ideal = make_ideal(algebra, members)
    quot, projection = quotient(algebra, ideal)
    return {
        "ideal": list(ideal.sorted_members),
        "algebra": tables_document(quot),
        "projection": list(projection),
    }, 0


def cmd_complete(args, doc):
    kind, value = parse_algebra_document(doc, args.max_size)
    if kind == "symbolic":
        report = completion_report(value)
        return {
            "strongly_complete": report.strongly_complete,
            "witness": descriptor_json(report.witness),
            "principal_factors": index_spec_document(report.spec),
            "free_families": [
                {"residue": fam.residue, "modulus": fam.modulus,
                 "order": fam.order, "multiplicity": fam.multiplicity}
                for fam in report.free_families
            ],
            "finite_orders": list(report.finite_orders) if report.finite_orders is not None else None,
        }, 0
    result = profinite_completion(value, args.max_size)
    return {
        "strongly_complete": result.is_isomorphism,
        "thread_count": result.thread_count,
        "ideal_count": len(result.system.ideals),
        "chain_orders": _sorted_orders(result.completion),
        "completion": product_document(_sorted_orders(result.completion)),
    }, 0


def cmd_decide_sc(args, doc):
    spec = _require_symbolic(parse_algebra_document(doc, args.max_size), "decide-sc")
    verdict = decide_strongly_complete(spec)
    payload = {
        "strongly_complete": verdict.strongly_complete,
        "witness": descriptor_json(verdict.witness),
    }
    return payload, 0 if verdict.strongly_complete else 2


def cmd_census(args, doc):
    spec = _require_symbolic(parse_algebra_document(doc, args.max_size), "census")
    window = args.principal_limit if args.principal_limit is not None else args.max_truncation
    descriptors = maximal_ideal_census(spec, principal_limit=window)
    principal = [descriptor_json(d) for d in descriptors if d.kind == "principal"]
    free = [descriptor_json(d) for d in descriptors if d.kind == "free_class"]
    return {
        "principal": principal,
        "free_classes": free,
        "principal_window": len(principal),
    }, 0


def cmd_limit(args, doc):
    spec = _require_symbolic(parse_algebra_document(doc, args.max_size), "limit")
    try:
        element_doc = json.loads(args.element)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"--element must be JSON: {exc}") from exc
    element = parse_symbolic_element(element_doc, spec)
    ultra = parse_ultrafilter(args.ultrafilter)
    value = ultrafilter_limit(element, ultra)
    return {
        "limit": fraction_text(value),
        "in_kernel": in_kernel(element, ultra),
        "element": symbolic_element_document(element),
        "ultrafilter": {"kind": ultra.kind, "index": ultra.index,
                        "residue": ultra.residue, "modulus": ultra.modulus},
    }, 0


HANDLERS = {
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "center": cmd_center,
    "ideals": cmd_ideals,
    "quotient": cmd_quotient,
    "complete": cmd_complete,
    "decide-sc": cmd_decide_sc,
    "census": cmd_census,
    "limit": cmd_limit,
}


# -- argument parsing and dispatch ------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvkit",
        description="Exact computation with finite and symbolically presented MV-algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("document", help="path of an algebra document (JSON); '-' reads stdin")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE,
                        help="carrier-size cap (default %(default)s)")
    common.add_argument("--max-truncation", type=int, default=DEFAULT_MAX_TRUNCATION,
                        help="index-window cap for truncations and census (default %(default)s)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="validate the MV axioms on a finite presentation")
    sub.add_parser("decompose", parents=[common], help="decompose into Lukasiewicz chain factors")
    sub.add_parser("center", parents=[common], help="Boolean center and its atoms")
    sub.add_parser("ideals", parents=[common], help="enumerate and classify all ideals")
    q = sub.add_parser("quotient", parents=[common], help="quotient by an ideal")
    q.add_argument("--ideal", required=True, help="JSON list of element indices")
    sub.add_parser("complete", parents=[common],
                   help="profinite completion (exact for finite input, symbolic for full_product)")
    sub.add_parser("decide-sc", parents=[common],
                   help="decide strong completeness of a full_product presentation")
    c = sub.add_parser("census", parents=[common], help="maximal-ideal census of a full_product")
    c.add_argument("--principal-limit", type=int, default=None,
                   help="how many principal descriptors to list (default: --max-truncation)")
    lm = sub.add_parser("limit", parents=[common], help="ultrafilter limit of a symbolic element")
    lm.add_argument("--element", required=True, help="symbolic element as JSON")
    lm.add_argument("--ultrafilter", required=True, help="'principal:x' or 'free:r:m'")
    return parser


def _read_document(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise SchemaError(f"cannot read document: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"document is not valid JSON: {exc}") from exc


def _emit(report, out_path):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = {"version": SCHEMA_VERSION, "command": args.command}
    try:
        doc = _read_document(args.document)
        payload, code = HANDLERS[args.command](args, doc)
        report["result"] = payload
    except SchemaError as exc:
        report["error"] = {"kind": "schema", "message": str(exc)}
        code = 3
    except ResourceCapError as exc:
        report["error"] = {"kind": "resource-cap", "message": str(exc), "cap": exc.cap}
        code = 4
    except DomainError as exc:
        report["error"] = {"kind": "domain", "message": str(exc)}
        code = 2
    _emit(report, args.out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
