"""Command-line front end.  Every command prints one JSON object with a top-level ``ok``.

Exit codes: 0 success or true verdict, 1 false verdict (with a witness),
2 usage or validation error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import io
from .cofree import CofreeGraph, extend_to_cofree, induced_hom, is_regular_injective, unit_embedding
from .covariety import (DEFAULT_COLORING_BUDGET, MODES, closure_audit, is_invariant_subgraph,
                        pat_of_class, pattern_hat, satisfies_pattern, satisfies_pattern_brute)
from .errors import BudgetExceeded, EnumerationCapExceeded, FGraphError
from .functors import DEFAULT_CAP, spec_from_json
from .graph import (factorize, is_congruence, kernel, mediate_through_epi, mediate_through_mono,
                    quotient, subgraph_check, validate_graph, validate_hom)
from .limits import (coequalize, cogenerated_subgraph, coproduct, equalize, generated_subgraph,
                     product, pushout, subgraph_lattice, terminal_graph)
from .relations import (edges_related, is_graph_relation, kernel_relation, largest_graph_relation,
                        largest_graph_relation_within)
from .search import DEFAULT_HOM_BUDGET, count_homs, iter_homs
from .transforms import (apply_transformation, conjunct_decomposition, deorient, lift_orientation,
                         minimize, orient, simplify, uncolor, underlying_hyper)


class UsageError(Exception):
    pass


@dataclass
class Caps:
    enum: int = DEFAULT_CAP
    colorings: int = DEFAULT_COLORING_BUDGET
    homs: int = DEFAULT_HOM_BUDGET


def _caps(args) -> Caps:
    caps = Caps()
    env = os.environ.get("FGRAPH_CAPS")
    if env:
        try:
            caps.enum, caps.colorings, caps.homs = (int(x) for x in env.split(","))
        except ValueError:
            raise UsageError("FGRAPH_CAPS must be three integers 'enum,colorings,homs'") from None
    if args.cap_enumeration is not None:
        caps.enum = args.cap_enumeration
    if args.cap_colorings is not None:
        caps.colorings = args.cap_colorings
    if args.cap_homs is not None:
        caps.homs = args.cap_homs
    return caps


# ---------------------------------------------------------------------------
# loading


def _load(path):
    try:
        return io.load_json(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except ValueError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def _graph(path):
    G = io.graph_from_json(_load(path))
    v = validate_graph(G)
    if not v:
        raise UsageError(f"{path}: invalid graph: {'; '.join(v.witness)}")
    return G


def _hom(path, G1, G2):
    phi = io.hom_from_json(_load(path), G1, G2)
    v = validate_hom(phi)
    if not v:
        raise UsageError(f"{path}: not a homomorphism ({v.reason})")
    return phi


def _spec(text):
    return spec_from_json(_load(text))


def _names(text):
    return [x for x in (text or "").split(",") if x]


def _handle(G, E, V):
    v = subgraph_check(G, E, V)
    if not v:
        raise UsageError(f"not a subgraph: {v.reason}")
    return v.witness


# ---------------------------------------------------------------------------
# command implementations; each returns (ok, payload)


def cmd_validate(a, caps):
    G = io.graph_from_json(_load(a.graph))
    v = validate_graph(G)
    return v.ok, {"violations": v.witness}


def cmd_check_hom(a, caps):
    G1, G2 = _graph(a.source), _graph(a.target)
    phi = io.hom_from_json(_load(a.hom), G1, G2)
    v = validate_hom(phi)
    return v.ok, ({} if v.ok else {"failing_edge": v.witness, "reason": v.reason})


def cmd_factorize(a, caps):
    G1, G2 = _graph(a.source), _graph(a.target)
    epi, mono, mid = factorize(_hom(a.hom, G1, G2))
    return True, {"image": io.graph_to_json(mid), "epi": io.hom_to_json(epi),
                  "mono": io.hom_to_json(mono)}


def cmd_kernel(a, caps):
    G1, G2 = _graph(a.source), _graph(a.target)
    return True, {"kernel": io.equiv_to_json(kernel(_hom(a.hom, G1, G2)))}


def cmd_quotient(a, caps):
    G = _graph(a.graph)
    theta = io.equiv_from_json(_load(a.equivalence), G)
    v = is_congruence(G, theta)
    if not v:
        return False, {"reason": v.reason, "witness": list(v.witness) if v.witness else None}
    Q, pi = quotient(G, theta)
    return True, {"graph": io.graph_to_json(Q), "projection": io.hom_to_json(pi)}


def cmd_mediate_epi(a, caps):
    G = _graph(a.source)
    G1, G2 = _graph(a.phi_target), _graph(a.psi_target)
    v = mediate_through_epi(_hom(a.phi, G, G1), _hom(a.psi, G, G2))
    if not v:
        return False, {"reason": v.reason, "witness": list(v.witness)}
    return True, {"mediator": io.hom_to_json(v.witness)}


def cmd_mediate_mono(a, caps):
    G = _graph(a.target)
    G1, G2 = _graph(a.phi_source), _graph(a.psi_source)
    v = mediate_through_mono(_hom(a.phi, G1, G), _hom(a.psi, G2, G))
    if not v:
        return False, {"reason": v.reason, "witness": list(v.witness)}
    return True, {"mediator": io.hom_to_json(v.witness)}


def cmd_coproduct(a, caps):
    S, inj = coproduct([_graph(p) for p in a.graphs])
    return True, {"graph": io.graph_to_json(S), "injections": [io.hom_to_json(i) for i in inj]}


def cmd_coequalize(a, caps):
    G1, G2 = _graph(a.source), _graph(a.target)
    Q, pi = coequalize(_hom(a.phi, G1, G2), _hom(a.psi, G1, G2))
    return True, {"graph": io.graph_to_json(Q), "projection": io.hom_to_json(pi)}


def cmd_pushout(a, caps):
    G = _graph(a.source)
    G1, G2 = _graph(a.phi_target), _graph(a.psi_target)
    P, legs = pushout(_hom(a.phi, G, G1), _hom(a.psi, G, G2))
    return True, {"graph": io.graph_to_json(P), "legs": [io.hom_to_json(x) for x in legs]}


def cmd_product(a, caps):
    P, legs = product([_graph(p) for p in a.graphs], caps.enum)
    return True, {"graph": io.graph_to_json(P), "projections": [io.hom_to_json(x) for x in legs]}


def cmd_equalize(a, caps):
    G1, G2 = _graph(a.source), _graph(a.target)
    h, inc = equalize([_hom(p, G1, G2) for p in a.homs])
    return True, {"subgraph": io.handle_to_json(h), "graph": io.graph_to_json(h.graph),
                  "inclusion": io.hom_to_json(inc)}


def cmd_cogenerate(a, caps):
    G = _graph(a.graph)
    h = cogenerated_subgraph(G, _names(a.edges), _names(a.vertices))
    return True, {"subgraph": io.handle_to_json(h)}


def cmd_generate(a, caps):
    G = _graph(a.graph)
    E, V = _names(a.edges), _names(a.vertices)
    unknown = (set(E) - set(G.edges)) | (set(V) - set(G.vertices))
    if unknown:
        raise UsageError(f"unknown elements: {sorted(unknown)}")
    return True, {"subgraph": io.handle_to_json(generated_subgraph(G, E, V))}


def cmd_lattice(a, caps):
    L = subgraph_lattice(_graph(a.graph), caps.enum)
    return True, {"size": len(L), "elements": [io.handle_to_json(h) for h in L]}


def cmd_terminal(a, caps):
    return True, {"graph": io.graph_to_json(terminal_graph(_spec(a.functor), caps.enum))}


def cmd_relation_check(a, caps):
    G1, G2 = _graph(a.left), _graph(a.right)
    v = is_graph_relation(G1, G2, io.relation_from_json(_load(a.relation)), caps.enum)
    if not v:
        return False, {"reason": v.reason, "failing_pair": list(v.witness)}
    return True, {"relation": io.graph_relation_to_json(v.witness)}


def cmd_largest_relation(a, caps):
    G1, G2 = _graph(a.left), _graph(a.right)
    if a.within:
        r = largest_graph_relation_within(G1, G2, io.relation_from_json(_load(a.within)), caps.enum)
    else:
        r = largest_graph_relation(G1, G2, caps.enum)
    return True, {"relation": io.graph_relation_to_json(r)}


def cmd_related(a, caps):
    G1, G2 = _graph(a.left), _graph(a.right)
    if a.left_edge not in G1.g or a.right_edge not in G2.g:
        raise UsageError("unknown edge id")
    v = edges_related(G1, a.left_edge, G2, a.right_edge, caps.enum)
    if not v:
        return False, {"related": False}
    G, phi, psi = v.witness
    return True, {"related": True, "witness": {"graph": io.graph_to_json(G),
                                               "left": io.hom_to_json(phi),
                                               "right": io.hom_to_json(psi)}}


def cmd_kernel_relation(a, caps):
    G1, G2 = _graph(a.source), _graph(a.target)
    kr = kernel_relation(_hom(a.hom, G1, G2), caps.enum)
    return True, {"relation": io.graph_relation_to_json(kr.relation),
                  "graph": io.graph_to_json(kr.relation.graph()),
                  "section": io.hom_to_json(kr.section),
                  "retraction": io.hom_to_json(kr.retraction)}


def cmd_cofree(a, caps):
    C = CofreeGraph(_spec(a.functor), io.colors_from_json(_load(a.colors)), caps.enum)
    return True, {"graph": io.graph_to_json(C.graph)}


def cmd_color_induce(a, caps):
    G = _graph(a.graph)
    C = CofreeGraph(G.spec, io.colors_from_json(_load(a.colors)), caps.enum)
    phi = induced_hom(G, io.coloring_from_json(_load(a.coloring)), C)
    return True, {"hom": io.hom_to_json(phi), "cofree": io.graph_to_json(C.graph)}


def cmd_unit_embed(a, caps):
    eta, C = unit_embedding(_graph(a.graph), caps.enum)
    return True, {"hom": io.hom_to_json(eta), "cofree": io.graph_to_json(C.graph)}


def cmd_extend(a, caps):
    G = _graph(a.graph)
    sub = _load(a.subgraph)
    h = _handle(G, sub.get("edges", []), sub.get("vertices", []))
    C = CofreeGraph(G.spec, io.colors_from_json(_load(a.colors)), caps.enum)
    phi = _hom(a.hom, h.graph, C.graph)
    return True, {"hom": io.hom_to_json(extend_to_cofree(h, phi, C))}


def cmd_regular_injective(a, caps):
    v = is_regular_injective(_graph(a.graph), caps.enum)
    if not v:
        return False, {"reason": v.reason}
    return True, {"retraction": io.hom_to_json(v.witness)}


def cmd_transform(a, caps):
    G = _graph(a.graph)
    if a.kind == "simplify":
        return cmd_simplify(a, caps)
    if a.kind == "minimize":
        return cmd_minimize(a, caps)
    if a.kind == "deorient":
        tau = deorient()
    elif a.kind == "underlying-hyper":
        tau = underlying_hyper()
    elif G.spec.kind == "colored":
        tau = uncolor(G.spec)
    else:
        raise UsageError("uncolor needs a graph over a colored functor")
    return True, {"graph": io.graph_to_json(apply_transformation(tau, G))}


def cmd_lift_orientation(a, caps):
    G1, G2 = _graph(a.source), _graph(a.target)
    phi = _hom(a.hom, G1, G2)
    omega2 = {str(k): str(v) for k, v in _load(a.orientation).items()}
    omega1 = lift_orientation(phi, omega2)
    O1, O2 = orient(G1, omega1), orient(G2, omega2)
    oriented = io.hom_from_json(io.hom_to_json(phi), O1, O2)
    return True, {"orientation": dict(sorted(omega1.items())),
                  "oriented_source": io.graph_to_json(O1),
                  "oriented_target": io.graph_to_json(O2),
                  "valid": validate_hom(oriented).ok}


def cmd_decompose(a, caps):
    d = conjunct_decomposition(_graph(a.graph))
    return True, {"parts": [{"subgraph": io.handle_to_json(h), "one_generated": og}
                            for h, og in zip(d.parts, d.one_generated)],
                  "isolated": list(d.isolated)}


def cmd_minimize(a, caps):
    M, pi = minimize(_graph(a.graph))
    return True, {"graph": io.graph_to_json(M), "projection": io.hom_to_json(pi)}


def cmd_simplify(a, caps):
    S, pi = simplify(_graph(a.graph))
    return True, {"graph": io.graph_to_json(S), "projection": io.hom_to_json(pi)}


def cmd_pattern_hat(a, caps):
    h = pattern_hat(io.pattern_from_json(_load(a.pattern)), _spec(a.functor), caps.enum)
    return True, {"subgraph": io.handle_to_json(h)}


def cmd_satisfies(a, caps):
    G = _graph(a.graph)
    P = io.pattern_from_json(_load(a.pattern))
    check = satisfies_pattern_brute if a.brute else satisfies_pattern
    v = check(G, P, caps.colorings, caps.enum)
    if not v:
        return False, {"coloring": io.coloring_to_json(v.witness)}
    return True, {}


def cmd_invariant(a, caps):
    spec = _spec(a.functor)
    P = io.pattern_from_json(_load(a.pattern))
    C = CofreeGraph(spec, P.colors, caps.enum)
    h = pattern_hat(P, spec, caps.enum) if a.hat else _handle(C.graph, P.edge_subset, P.vertex_subset)
    v = is_invariant_subgraph(h, C, caps.colorings)
    if not v:
        return False, {"subgraph": io.handle_to_json(h), "endomorphism": io.hom_to_json(v.witness)}
    return True, {"subgraph": io.handle_to_json(h)}


def cmd_pat_of_class(a, caps):
    Ks = [_graph(p) for p in a.graphs]
    spec = _spec(a.functor) if a.functor else None
    h, P = pat_of_class(Ks, io.colors_from_json(_load(a.colors)), spec, caps.colorings, caps.enum)
    return True, {"pattern": io.pattern_to_json(P), "subgraph": io.handle_to_json(h)}


def cmd_closure_audit(a, caps):
    Ks = [_graph(p) for p in a.cls]
    U = [_graph(p) for p in a.universe]
    spec = _spec(a.functor) if a.functor else None
    rep = closure_audit(Ks, U, io.colors_from_json(_load(a.colors)), a.mode, spec,
                        caps.colorings, caps.homs, caps.enum)
    rows = [{"probe": a.universe[r.index], "closure": r.lhs, "pattern": r.rhs, "agree": r.agree}
            for r in rep.rows]
    return rep.all_agree, {"mode": rep.mode, "rows": rows, "members": [a.universe[i] for i in rep.members],
                           "warnings": rep.warnings}


def cmd_hom_search(a, caps):
    G1, G2 = _graph(a.source), _graph(a.target)
    if a.count:
        if a.injective:
            n = sum(1 for _ in iter_homs(G1, G2, injective=True, budget=caps.homs))
        else:
            n = count_homs(G1, G2, budget=caps.homs)
        return True, {"count": n}
    homs = []
    for phi in iter_homs(G1, G2, injective=a.injective, budget=caps.homs):
        if a.limit is not None and len(homs) >= a.limit:
            break
        homs.append(io.hom_to_json(phi))
    return True, {"count": len(homs), "homs": homs}


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--pretty", action="store_true", help="indented output")
    p.add_argument("-o", "--output", default=None, metavar="PATH",
                   help="write the JSON here instead of standard output")
    p.add_argument("--cap-enumeration", type=int, default=None, metavar="N")
    p.add_argument("--cap-colorings", type=int, default=None, metavar="N")
    p.add_argument("--cap-homs", type=int, default=None, metavar="N")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fgraphs", description="Finite F-graphs: homomorphisms, limits, "
                     "relations, cofree graphs and patterns.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name, fn, help, *positional):
        p = sub.add_parser(name, help=help)
        for arg in positional:
            if isinstance(arg, tuple):
                p.add_argument(arg[0], **arg[1])
            else:
                p.add_argument(arg)
        _common(p)
        p.set_defaults(fn=fn)
        return p

    cmd("validate", cmd_validate, "check a graph file", "graph")
    cmd("check-hom", cmd_check_hom, "check the commuting square", "source", "target", "hom")
    cmd("factorize", cmd_factorize, "epi-mono factorization", "source", "target", "hom")
    cmd("kernel", cmd_kernel, "kernel of a homomorphism", "source", "target", "hom")
    cmd("quotient", cmd_quotient, "factor graph by an equivalence pair", "graph", "equivalence")
    cmd("mediate-epi", cmd_mediate_epi, "factor psi through a surjective phi",
        "source", "phi_target", "phi", "psi_target", "psi")
    cmd("mediate-mono", cmd_mediate_mono, "factor psi through an injective phi",
        "target", "phi_source", "phi", "psi_source", "psi")
    cmd("coproduct", cmd_coproduct, "disjoint sum", ("graphs", {"nargs": "+"}))
    cmd("coequalize", cmd_coequalize, "coequalizer of two parallel homs",
        "source", "target", "phi", "psi")
    cmd("pushout", cmd_pushout, "pushout of a span", "source", "phi_target", "phi",
        "psi_target", "psi")
    cmd("product", cmd_product, "categorical product", ("graphs", {"nargs": "+"}))
    cmd("equalize", cmd_equalize, "equalizer of parallel homs", "source", "target",
        ("homs", {"nargs": "+"}))
    for name, fn in (("cogenerate", cmd_cogenerate), ("generate", cmd_generate)):
        p = cmd(name, fn, f"{name}d subgraph", "graph")
        p.add_argument("--edges", default="", help="comma-separated edge ids")
        p.add_argument("--vertices", default="", help="comma-separated vertex ids")
    cmd("lattice", cmd_lattice, "all subgraphs", "graph")
    cmd("terminal", cmd_terminal, "terminal graph of a functor", "functor")
    cmd("relation-check", cmd_relation_check, "is a relation pair a graph relation",
        "left", "right", "relation")
    p = cmd("largest-relation", cmd_largest_relation, "largest graph relation", "left", "right")
    p.add_argument("--within", default=None, help="relation pair bounding the search")
    cmd("related", cmd_related, "are two edges related", "left", "left_edge", "right", "right_edge")
    cmd("kernel-relation", cmd_kernel_relation, "kernel pair as a graph relation",
        "source", "target", "hom")
    cmd("cofree", cmd_cofree, "cofree graph over a color set", "functor", "colors")
    cmd("color-induce", cmd_color_induce, "hom into the cofree graph induced by a coloring",
        "graph", "colors", "coloring")
    cmd("unit-embed", cmd_unit_embed, "embedding into the cofree graph over the carrier", "graph")
    cmd("extend", cmd_extend, "extend a subgraph's hom into a cofree graph",
        "graph", "subgraph", "colors", "hom")
    cmd("regular-injective", cmd_regular_injective, "search a retraction of the unit", "graph")
    p = cmd("transform", cmd_transform, "apply a built-in transformation", "graph")
    p.add_argument("--kind", required=True,
                   choices=["deorient", "uncolor", "underlying-hyper", "simplify", "minimize"])
    cmd("lift-orientation", cmd_lift_orientation, "pull an orientation back along a hom",
        "source", "target", "hom", "orientation")
    cmd("decompose", cmd_decompose, "conjunct decomposition", "graph")
    cmd("minimize", cmd_minimize, "quotient by the kernel into the terminal graph", "graph")
    cmd("simplify", cmd_simplify, "merge parallel edges", "graph")
    cmd("pattern-hat", cmd_pattern_hat, "largest subgraph of the cofree graph inside a pattern",
        "functor", "pattern")
    p = cmd("satisfies", cmd_satisfies, "pattern satisfaction", "graph", "pattern")
    p.add_argument("--brute", action="store_true", help="enumerate every coloring")
    p = cmd("invariant", cmd_invariant, "is a pattern's subgraph invariant", "functor", "pattern")
    p.add_argument("--hat", action="store_true", help="use the pattern's largest subgraph")
    p = cmd("pat-of-class", cmd_pat_of_class, "pattern of a class of graphs",
            "colors", ("graphs", {"nargs": "+"}))
    p.add_argument("--functor", default=None)
    p = cmd("closure-audit", cmd_closure_audit, "closure membership vs pattern satisfaction",
            "colors")
    p.add_argument("--class", dest="cls", nargs="+", required=True, metavar="GRAPH")
    p.add_argument("--universe", nargs="+", required=True, metavar="GRAPH")
    p.add_argument("--mode", choices=MODES, default="covariety")
    p.add_argument("--functor", default=None)
    p = cmd("hom-search", cmd_hom_search, "enumerate or count homomorphisms", "source", "target")
    p.add_argument("--count", action="store_true")
    p.add_argument("--injective", action="store_true")
    p.add_argument("--limit", type=int, default=None)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    pretty = "--pretty" in (argv if argv is not None else sys.argv[1:])
    target = None
    try:
        args = build_parser().parse_args(argv)
        target = getattr(args, "output", None)
        if args.command is None:
            raise UsageError("a subcommand is required")
        caps = _caps(args)
        ok, payload = args.fn(args, caps)
        code = 0 if ok else 1
        result = {"ok": ok, **payload}
    except (BudgetExceeded, EnumerationCapExceeded) as exc:
        code, result = 3, {"ok": False, "error": type(exc).__name__, "message": str(exc)}
    except (UsageError, FGraphError, ValueError, KeyError, TypeError) as exc:
        code, result = 2, {"ok": False, "error": type(exc).__name__, "message": str(exc)}
    text = io.dumps(result, pretty) + "\n"
    if target:
        try:
            with open(target, "w") as fh:
                fh.write(text)
            return code
        except OSError as exc:
            code = 2
            text = io.dumps({"ok": False, "error": "OSError", "message": str(exc)}, pretty) + "\n"
    out.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
