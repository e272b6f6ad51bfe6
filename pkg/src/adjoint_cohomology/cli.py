"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 resource limit
(coset budget or oracle order cap), 3 mathematical mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import re
import sys
from fractions import Fraction

from . import __version__
from .complex import build_component, compose_check, degree_bounds_hold
from .derivations import DEFAULT_ORDER_CAP, derivation_basis, derivation_dims, leibniz_check
from .errors import (
    AdjointCohomologyError,
    BudgetExceeded,
    OrderTooLarge,
    UnsupportedClass,
)
from .group_engine import enumerate_finite, free_abelian_backend
from .groupoid import DerivationMatrix, check_additivity, character_from_matrix
from .presentation import format_word, parse_presentation
from .verify import explicit_outer_cocycles, verify_group

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def rational(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_classes(text: str, free_abelian: bool) -> list:
    """``"(0,0) (1,0)"`` or ``"0;1;-1"``; finite groups take element indices ``"0,3"``."""
    if "(" in text:
        groups = re.findall(r"\(([^)]*)\)", text)
        items = [tuple(int(v) for v in g.replace(" ", "").split(",") if v) for g in groups]
    else:
        sep = r"[;\s]+" if free_abelian else r"[;,\s]+"
        tokens = [t for t in re.split(sep, text.strip()) if t]
        items = [tuple(int(v) for v in t.split(",")) for t in tokens]
    if not items:
        raise UsageError("--classes is empty")
    if free_abelian:
        return items
    if any(len(t) != 1 for t in items):
        raise UsageError("finite backends take element indices in --classes")
    return [t[0] for t in items]


def _read_source(args) -> str:
    if args.inline is not None:
        return args.inline
    if args.source is None:
        raise UsageError("give a presentation file or --inline TEXT")
    if os.path.isfile(args.source):
        with open(args.source, encoding="utf-8") as fh:
            return fh.read()
    if args.source.lstrip().startswith("<"):
        return args.source
    raise UsageError(f"no such file: {args.source}")


def _load(args, need_backend=True):
    presentation = parse_presentation(_read_source(args))
    if not need_backend:
        return presentation, None, None
    classes = None
    if args.backend == "free-abelian":
        if not args.trust_abelian:
            raise UsageError("--backend free-abelian requires --trust-abelian")
        if args.classes is None:
            raise UsageError("--backend free-abelian requires --classes")
        rank = presentation.num_generators if args.rank is None else args.rank
        if rank != presentation.num_generators:
            raise UsageError(f"--rank {rank} does not match {presentation.num_generators} generators")
        backend = free_abelian_backend(presentation, rank, trust_abelian=True)
        classes = parse_classes(args.classes, True)
        if any(len(c) != rank for c in classes):
            raise UsageError(f"every listed element needs {rank} coordinates")
    else:
        backend = enumerate_finite(presentation, args.coset_budget)
        if args.classes is not None:
            classes = parse_classes(args.classes, False)
    return presentation, backend, classes


def _rep_json(backend, g):
    return list(g) if isinstance(g, tuple) else g


def _emit(args, payload: dict, lines: list):
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _group_json(backend, num_listed):
    return {"order": backend.order if backend.is_finite else "infinite", "num_classes_listed": num_listed}


def _component_json(backend, r):
    return {
        "class_representative": _rep_json(backend, r.class_representative),
        "class_label": backend.label(r.class_representative),
        "num_vertices": r.num_vertices,
        "num_edges": r.num_edges,
        "num_cells": r.num_cells,
        "dim_ker_d1": r.dim_ker_d1,
        "rank_d0": r.rank_d0,
        "h1": r.h1,
    }


def _component_line(backend, r):
    return (
        f"class {backend.label(r.class_representative)}: vertices={r.num_vertices} edges={r.num_edges} "
        f"cells={r.num_cells} ker_d1={r.dim_ker_d1} rank_d0={r.rank_d0} h1={r.h1}"
    )


def _oracle_json(o):
    if o is None:
        return None
    return {
        "group_order": o.group_order,
        "num_classes": o.num_classes,
        "dim_der": o.dim_der,
        "dim_int": o.dim_int,
        "dim_out": o.dim_out,
    }


def report_json(backend, report) -> dict:
    matches = None
    if report.oracle is not None:
        matches = {
            "theorem4_kernel_match": report.theorem4_kernel_match,
            "theorem4_inner_match": report.theorem4_inner_match,
            "corollary1_match": report.corollary1_match,
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "group": _group_json(backend, len(report.components)),
        "components": [_component_json(backend, r) for r in report.components],
        "totals": {
            "dim_ker_d1": report.total_ker_d1,
            "rank_d0": report.total_rank_d0,
            "h1": report.total_h1,
        },
        "oracle": _oracle_json(report.oracle),
        "matches": matches,
        "warnings": list(report.warnings),
    }


def report_lines(backend, report) -> list:
    order = backend.order if backend.is_finite else "infinite"
    lines = [f"group order={order} classes_listed={len(report.components)}"]
    lines += [_component_line(backend, r) for r in report.components]
    lines.append(f"totals ker_d1={report.total_ker_d1} rank_d0={report.total_rank_d0} h1={report.total_h1}")
    o = report.oracle
    if o is not None:
        lines.append(f"oracle order={o.group_order} classes={o.num_classes} der={o.dim_der} int={o.dim_int} out={o.dim_out}")
        lines.append(
            "matches theorem4_kernel={} theorem4_inner={} corollary1={}".format(
                *(str(f).lower() for f in (report.theorem4_kernel_match, report.theorem4_inner_match, report.corollary1_match))
            )
        )
    lines += [f"warning: {w}" for w in report.warnings]
    return lines


def cmd_parse(args) -> int:
    p, _, _ = _load(args, need_backend=False)
    rels = [format_word(r, p.generator_names) for r in p.relators]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "generators": list(p.generator_names),
        "relators": rels,
        "warnings": list(p.warnings),
    }
    _emit(args, payload, [str(p)] + [f"warning: {w}" for w in p.warnings])
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.backend != "finite":
        raise UsageError("enumerate needs the finite backend")
    p, b, _ = _load(args)
    classes = b.conjugacy_classes()
    sizes = [len(c) for c in classes]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "group": _group_json(b, len(classes)),
        "class_sizes": sizes,
        "class_representatives": [b.label(c.representative) for c in classes],
        "warnings": list(p.warnings),
    }
    line = f"order={b.order} classes={len(classes)} sizes=[{','.join(map(str, sizes))}]"
    _emit(args, payload, [line] + [f"warning: {w}" for w in p.warnings])
    return EXIT_OK


def cmd_complex(args) -> int:
    p, b, classes = _load(args)
    cls_list = b.conjugacy_classes(classes)
    comps = []
    lines = []
    ok = True
    for c in cls_list:
        cc = build_component(b, p, c)
        zero = compose_check(cc)
        bounded = degree_bounds_hold(cc, p)
        ok = ok and zero and bounded
        comps.append(
            {
                "class_representative": _rep_json(b, c.representative),
                "class_label": b.label(c.representative),
                "num_vertices": len(cc.vertices),
                "num_edges": len(cc.edges),
                "num_cells": len(cc.cells),
                "d1_d0_zero": zero,
                "degree_bounds": bounded,
            }
        )
        lines.append(
            f"class {b.label(c.representative)}: vertices={len(cc.vertices)} edges={len(cc.edges)} "
            f"cells={len(cc.cells)} d1_d0_zero={str(zero).lower()} degree_bounds={str(bounded).lower()}"
        )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "group": _group_json(b, len(cls_list)),
        "components": comps,
        "warnings": list(p.warnings),
    }
    _emit(args, payload, lines + [f"warning: {w}" for w in p.warnings])
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_cohomology(args) -> int:
    p, b, classes = _load(args)
    report = verify_group(p, b, run_oracle=False, classes=classes)
    cocycles = []
    lines = report_lines(b, report)
    for c in b.conjugacy_classes(classes):
        cc = build_component(b, p, c)
        vecs = explicit_outer_cocycles(p, b, c)
        rendered = []
        for v in vecs:
            rendered.append(
                {
                    f"{b.label(cc.edges[k].source)}:{p.generator_names[cc.edges[k].generator_index]}": rational(val)
                    for k, val in sorted(v.entries.items())
                }
            )
        cocycles.append({"class_label": b.label(c.representative), "cocycles": rendered})
        for r in rendered:
            lines.append(f"cocycle on class {b.label(c.representative)}: " + " ".join(f"{k}={v}" for k, v in r.items()))
    payload = report_json(b, report)
    payload["cocycles"] = cocycles
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_oracle(args) -> int:
    p, b, _ = _load(args)
    if not b.is_finite:
        raise UsageError("the derivation oracle needs a finite group")
    o = derivation_dims(b, args.oracle_cap)
    payload = {"schema_version": SCHEMA_VERSION, "oracle": _oracle_json(o)}
    lines = [f"oracle order={o.group_order} classes={o.num_classes} der={o.dim_der} int={o.dim_int} out={o.dim_out}"]
    status = EXIT_OK
    if args.samples:
        rng = random.Random(args.seed)
        basis = derivation_basis(b, args.oracle_cap)
        agree = 0
        for k in range(args.samples):
            if k % 2 == 0 or not basis:
                X = DerivationMatrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(b.order)] for _ in range(b.order)])
            else:
                X = DerivationMatrix.zeros(b.order)
                for D in basis:
                    X = X + D.scale(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
            agree += leibniz_check(b, X) == check_additivity(b, character_from_matrix(b, X))
        payload["leibniz_samples"] = {"seed": args.seed, "samples": args.samples, "agreements": agree}
        lines.append(f"leibniz samples={args.samples} agreements={agree} seed={args.seed}")
        if agree != args.samples:
            status = EXIT_MISMATCH
    _emit(args, payload, lines)
    return status


def cmd_verify(args) -> int:
    p, b, classes = _load(args)
    report = verify_group(p, b, run_oracle=True, classes=classes, oracle_cap=args.oracle_cap)
    _emit(args, report_json(b, report), report_lines(b, report))
    if not report.all_match:
        sys.stderr.write("MISMATCH: complex-side dimensions disagree with the derivation oracle\n")
        return EXIT_MISMATCH
    return EXIT_OK


def component_dot(presentation, backend, cc) -> str:
    ids = {v: f"n{k}" for k, v in enumerate(cc.vertices)}
    lines = [f'digraph "class {backend.label(cc.conjugacy_class.representative)}" {{']
    for v in cc.vertices:
        lines.append(f'  {ids[v]} [label="{backend.label(v)}"];')
    for e, t in zip(cc.edges, cc.edge_targets):
        lines.append(f'  {ids[e.source]} -> {ids[t]} [label="{presentation.generator_names[e.generator_index]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    p, b, classes = _load(args)
    cls_list = b.conjugacy_classes(classes)
    if not 0 <= args.class_index < len(cls_list):
        raise UnsupportedClass(f"class index {args.class_index} out of range (0..{len(cls_list) - 1})")
    cc = build_component(b, p, cls_list[args.class_index])
    sys.stdout.write(component_dot(p, b, cc))
    return EXIT_OK


COMMANDS = {
    "parse": (cmd_parse, "parse and normalize a presentation"),
    "enumerate": (cmd_enumerate, "coset-enumerate a finite group and list its classes"),
    "complex": (cmd_complex, "build the Cayley complex components and check d1 d0 = 0"),
    "cohomology": (cmd_cohomology, "compute H^1 with finite supports per component"),
    "oracle": (cmd_oracle, "dimensions of Der, Int, Out of Q[G] by brute force"),
    "verify": (cmd_verify, "compare the complex side against the oracle"),
    "export-dot": (cmd_export_dot, "write one component's 1-skeleton as Graphviz DOT"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adjoint-cohomology", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("source", nargs="?", help="presentation file (or inline text starting with '<')")
        sp.add_argument("--inline", "-e", help="presentation text, e.g. '< x | x^2 >'")
        sp.add_argument("--backend", choices=["finite", "free-abelian"], default="finite")
        sp.add_argument("--rank", type=int)
        sp.add_argument("--classes", help="elements whose classes to analyse, e.g. '(0,0) (1,0)'")
        sp.add_argument("--trust-abelian", action="store_true", help="assert the presentation defines Z^n")
        sp.add_argument("--coset-budget", type=int, default=10000)
        sp.add_argument("--oracle-cap", type=int, default=DEFAULT_ORDER_CAP)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--seed", type=int, default=0)
        if name == "oracle":
            sp.add_argument("--samples", type=int, default=0, help="random Leibniz/additivity agreement checks")
        if name == "export-dot":
            sp.add_argument("--class-index", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}; raise --coset-budget or use --backend free-abelian\n")
        return EXIT_RESOURCE
    except OrderTooLarge as exc:
        sys.stderr.write(f"error: {exc}; raise --oracle-cap\n")
        return EXIT_RESOURCE
    except (UsageError, AdjointCohomologyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
