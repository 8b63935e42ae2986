"""Command-line front end: JSON reports and deterministic SVG rendering.

Every subcommand prints a single JSON envelope
``{"tool_version", "input", "result", "timing"}`` to stdout; ``timing`` is
null unless ``--timing`` is passed, so output is byte-identical for
identical (input, seed, version).  Exit codes: 0 success, 2 input error,
3 infeasible or degenerate linkage.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import __version__
from .catalog import (DegenerateLinkage, appendix_structure,
                      classify_quadrilateral, hexagon_report, pentagon_report,
                      triangle_case)
from .cells import (CollinearVertex, CyclicPartition, EmptySpace, FacePoset,
                    RigidPoint, enumerate_cells)
from .core import (DihedralElement, LengthVector, automorphism_group,
                   format_rational, reflectivity)
from .geometry import (DegenerateCell, Infeasible, closure_residual,
                       solve_cell_representative)
from .simplicial import (SimplicialComplex, homology, homology_mod2,
                         is_closed_surface, order_complex)
from .svg import arrow_diagram, graph_diagram
from .symmetry import (AutGroup, InvalidL, NoAllowablePair, NotASubgroup,
                       NotAnAutomorphism, dihedral_fixed_sampler,
                       dihedral_max_span, quotient_complex,
                       reflection_fixed_report, rotation_fixed_report,
                       verify_fixed)

_SPACES = {"reduced": "Reduced", "fully-reduced": "FullyReduced"}

_INFEASIBLE = (EmptySpace, RigidPoint, DegenerateLinkage, DegenerateCell,
               Infeasible, NotASubgroup, NotAnAutomorphism, InvalidL,
               NoAllowablePair)


class InputError(Exception):
    pass


def _lengths(text: str) -> LengthVector:
    try:
        return LengthVector.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad length vector {text!r}: {exc}") from exc


def _space(text: str) -> str:
    if text not in _SPACES:
        raise InputError(f"space must be one of {sorted(_SPACES)}")
    return _SPACES[text]


def _parse_cell(label: str, n: int):
    try:
        if label.startswith("lin:"):
            return CollinearVertex.parse(label, n)
        return CyclicPartition.parse(label)
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad cell label {label!r}: {exc}") from exc


def _emit(args, input_echo: dict, result, started: float) -> int:
    envelope = {
        "tool_version": __version__,
        "input": input_echo,
        "result": result,
        "timing": (time.monotonic() - started) if args.timing else None,
    }
    sys.stdout.write(json.dumps(envelope, indent=2) + "\n")
    return 0


def _complex_json(poset: FacePoset) -> dict:
    cells = [{"label": c.label(), "dim": c.dim} for c in poset.elements]
    incidence = [
        [i, j]
        for i, p in enumerate(poset.elements)
        for j, q in enumerate(poset.elements)
        if poset.less(q, p)
    ]
    return {"space": poset.space, "cells": cells, "incidence": incidence}


def _complex_from_json(payload: dict) -> SimplicialComplex:
    """Rebuild the order complex of a `complex` JSON payload.

    `incidence` lists every strict face pair [i, j] (cell j in the closure
    of cell i), so chains of the face poset can be read off directly.
    """
    cells = payload["cells"]
    below = {i: set() for i in range(len(cells))}
    for i, j in payload["incidence"]:
        below[i].add(j)
    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        last = chain[-1]
        for j in sorted(below[last]):
            extend(chain + [j])

    for i in range(len(cells)):
        extend([i])
    maximal = [c for c in chains
               if not any(set(c) < set(d) for d in chains if d != c)]
    labels = [c["label"] for c in cells]
    return SimplicialComplex(labels, maximal)


def _homology_json(K: SimplicialComplex) -> dict:
    prof = homology(K)
    out = prof.to_json()
    out["mod2"] = list(homology_mod2(K))
    out["euler"] = K.euler()
    if K.dim == 2:
        closed = is_closed_surface(K)
        out["orientable"] = (prof.betti[2] == prof.betti[0]) if closed else None
    else:
        out["orientable"] = None
    return out


def _subgroup(G: AutGroup, spec_text: str, n: int) -> AutGroup:
    if spec_text == "full":
        return G
    if spec_text == "rotations":
        rots = [g for g in G if not g.flip]
        return AutGroup(rots, "Cyclic", len(rots))
    if spec_text.startswith("reflection:"):
        try:
            shift = int(spec_text.split(":", 1)[1])
        except ValueError as exc:
            raise InputError(f"bad group selector {spec_text!r}") from exc
        rho = DihedralElement(shift, True, n)
        if rho not in G.elements:
            raise NotAnAutomorphism(rho)
        return AutGroup([DihedralElement.identity(n), rho], "Dihedral", 1)
    raise InputError(f"bad group selector {spec_text!r}")


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_aut(args, started):
    lv = _lengths(args.lengths)
    G = automorphism_group(lv)
    refl = reflectivity(lv)
    result = {
        "order": G.order,
        "kind": G.kind,
        "k": G.k,
        "group": f"{G.kind}({G.k})",
        "reflectivity": refl.kind,
        "elements": [g.label() for g in G],
    }
    return _emit(args, {"lengths": args.lengths, "seed": args.seed},
                 result, started)


def _cmd_complex(args, started):
    lv = _lengths(args.lengths)
    poset = enumerate_cells(lv, _space(args.space))
    result = _complex_json(poset)
    result["f_vector"] = list(poset.f_vector())
    result["euler"] = poset.euler()
    return _emit(args, {"lengths": args.lengths, "space": args.space,
                        "seed": args.seed}, result, started)


def _cmd_homology(args, started):
    if args.from_json:
        with open(args.from_json) as fh:
            payload = json.load(fh)
        if "result" in payload:  # accept a full envelope too
            payload = payload["result"]
        K = _complex_from_json(payload)
        echo = {"from_json": args.from_json, "seed": args.seed}
    else:
        if not args.lengths:
            raise InputError("homology needs --lengths or --from-json")
        lv = _lengths(args.lengths)
        poset = enumerate_cells(lv, _space(args.space))
        K = order_complex(poset)
        echo = {"lengths": args.lengths, "space": args.space,
                "seed": args.seed}
    return _emit(args, echo, _homology_json(K), started)


def _cmd_quotient(args, started):
    lv = _lengths(args.lengths)
    space = _space(args.space)
    poset = enumerate_cells(lv, space)
    G = _subgroup(automorphism_group(lv), args.group, lv.n)
    Q = quotient_complex(poset, G, include_reversal=args.reversal)
    K = Q.complex
    result = {
        "group": args.group,
        "group_order": G.order * (2 if args.reversal else 1),
        "include_reversal": args.reversal,
        "orbit_count": Q.orbit_count,
        "f_vector": list(K.f_vector()),
        "euler": K.euler(),
        "homology": _homology_json(K),
    }
    return _emit(args, {"lengths": args.lengths, "space": args.space,
                        "group": args.group, "reversal": args.reversal,
                        "seed": args.seed}, result, started)


def _cmd_fixed_set(args, started):
    lv = _lengths(args.lengths)
    echo = {"lengths": args.lengths, "seed": args.seed}
    if args.reflection is not None:
        rho = DihedralElement(args.reflection, True, lv.n)
        report = reflection_fixed_report(lv, rho, seed=args.seed,
                                         samples=args.count)
        result = report.to_json()
        verified = [verify_fixed(lv, c, [rho]) for c in report.samples]
        echo["reflection"] = args.reflection
    elif args.rotation is not None:
        report = rotation_fixed_report(lv, args.rotation, seed=args.seed,
                                       samples_per_class=args.count)
        result = report.to_json()
        rot = DihedralElement(lv.n // args.rotation, False, lv.n)
        verified = [verify_fixed(lv, c, [rot]) for c in report.samples]
        echo["rotation"] = args.rotation
    elif args.dihedral is not None:
        if args.span is None:
            raise InputError("--dihedral needs --span L")
        configs = dihedral_fixed_sampler(lv, args.dihedral, args.span,
                                         shift=args.shift, seed=args.seed,
                                         count=args.count)
        rho1 = DihedralElement(args.shift, True, lv.n)
        rho2 = DihedralElement(args.shift + lv.n // args.dihedral, True, lv.n)
        verified = [verify_fixed(lv, c, [rho1, rho2]) for c in configs]
        result = {
            "subgroup": f"D{args.dihedral}",
            "kind": "dihedral",
            "shift": args.shift,
            "span": args.span,
            "max_span": dihedral_max_span(lv, args.dihedral, args.shift),
            "samples": [list(c.thetas) for c in configs],
        }
        echo.update({"dihedral": args.dihedral, "span": args.span,
                     "shift": args.shift})
    else:
        raise InputError(
            "fixed-set needs one of --reflection/--rotation/--dihedral")
    result["verified"] = verified
    return _emit(args, echo, result, started)


def _cmd_classify_quad(args, started):
    lv = _lengths(args.lengths)
    if lv.n != 4:
        raise InputError("classify-quad needs exactly 4 lengths")
    p, q, r, s = lv.lengths
    case = classify_quadrilateral(p, q, r, s)
    result = case.to_json()
    if args.svg:
        structure = appendix_structure(p, q, r, s)
        _write_structure_svg(structure, args.svg, args.seed)
        result["svg"] = args.svg
    return _emit(args, {"lengths": args.lengths, "seed": args.seed},
                 result, started)


def _write_structure_svg(structure: dict, path: str, seed: int) -> None:
    labels = [v["label"] for v in structure["vertices"]]
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for arc in structure["arcs"]:
        ends = arc["endpoints"]
        a = index[ends[0]]
        b = index[ends[-1]]
        edges.append((a, b))
    notes = {index[v["label"]]: f"deg {v['degree']}"
             for v in structure["vertices"]}
    doc = graph_diagram(labels, edges, seed=seed,
                        title=",".join(structure["lengths"]),
                        vertex_notes=notes)
    with open(path, "w") as fh:
        fh.write(doc)


def _cmd_pentagon_report(args, started):
    report = pentagon_report(grid=args.grid)
    result = report.to_json()
    if args.figures_dir:
        from .figures import pentagon_figures

        result["figures"] = pentagon_figures(report, args.figures_dir)
    if args.csv:
        from .figures import pentagon_csv

        result["csv"] = pentagon_csv(report, args.csv)
    return _emit(args, {"grid": args.grid, "seed": args.seed},
                 result, started)


def _cmd_hexagon_report(args, started):
    report = hexagon_report()
    result = report.to_json()
    if args.figures_dir:
        from .figures import hexagon_figures

        result["figures"] = hexagon_figures(report, args.figures_dir)
    if args.csv:
        from .figures import hexagon_csv

        result["csv"] = hexagon_csv(report, args.csv)
    return _emit(args, {"seed": args.seed}, result, started)


def _cmd_sample(args, started):
    lv = _lengths(args.lengths)
    cell = _parse_cell(args.cell, lv.n)
    config = solve_cell_representative(lv, cell, seed=args.seed)
    residual = closure_residual(lv, config)
    result = {
        "thetas": list(config.thetas),
        "residual": [residual[0], residual[1]],
        "cell": cell.label(),
    }
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(arrow_diagram(config.thetas, title=cell.label()))
        result["svg"] = args.svg
    return _emit(args, {"lengths": args.lengths, "cell": args.cell,
                        "seed": args.seed}, result, started)


def _cmd_render(args, started):
    lv = _lengths(args.lengths)
    if args.cell:
        cell = _parse_cell(args.cell, lv.n)
        config = solve_cell_representative(lv, cell, seed=args.seed)
        doc = arrow_diagram(config.thetas, title=cell.label())
        echo = {"lengths": args.lengths, "cell": args.cell,
                "seed": args.seed}
    else:
        space = _space(args.space)
        poset = enumerate_cells(lv, space)
        if max(poset.dims()) > 1:
            raise InputError(
                "graph rendering needs a 1-dimensional complex; "
                "use --cell for an arrow diagram")
        verts = poset.cells_of_dim(0)
        index = {v: i for i, v in enumerate(verts)}
        edges = []
        for a in poset.cells_of_dim(1):
            ends = poset.below(a)
            b = index[ends[0]]
            c = index[ends[-1]]
            edges.append((b, c))
        doc = graph_diagram([v.label() for v in verts], edges,
                            seed=args.seed, title=args.lengths)
        echo = {"lengths": args.lengths, "space": args.space,
                "seed": args.seed}
    with open(args.out, "w") as fh:
        fh.write(doc)
    return _emit(args, echo, {"written": args.out}, started)


def _cmd_triangle(args, started):
    lv = _lengths(args.lengths)
    if lv.n != 3:
        raise InputError("triangle needs exactly 3 lengths")
    a, b, c = lv.lengths
    return _emit(args, {"lengths": args.lengths, "seed": args.seed},
                 triangle_case(a, b, c), started)


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polysym",
        description="Configuration spaces of planar closed chains: "
                    "symmetry groups, cell complexes, homology, quotients.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--timing", action="store_true")

    p = sub.add_parser("aut", help="automorphism group of a length vector")
    p.add_argument("--lengths", required=True)
    common(p)
    p.set_defaults(fn=_cmd_aut)

    p = sub.add_parser("complex", help="cell complex of the chosen space")
    p.add_argument("--lengths", required=True)
    p.add_argument("--space", default="reduced", choices=sorted(_SPACES))
    common(p)
    p.set_defaults(fn=_cmd_complex)

    p = sub.add_parser("homology", help="homology of the order complex")
    p.add_argument("--lengths")
    p.add_argument("--space", default="reduced", choices=sorted(_SPACES))
    p.add_argument("--from-json", dest="from_json",
                   help="re-ingest a `complex` JSON payload")
    common(p)
    p.set_defaults(fn=_cmd_homology)

    p = sub.add_parser("quotient", help="symmetric (orbit) complex")
    p.add_argument("--lengths", required=True)
    p.add_argument("--space", default="reduced", choices=sorted(_SPACES))
    p.add_argument("--group", default="full",
                   help="full | rotations | reflection:<shift>")
    p.add_argument("--reversal", action="store_true",
                   help="also quotient by the ambient orientation reversal")
    common(p)
    p.set_defaults(fn=_cmd_quotient)

    p = sub.add_parser("fixed-set", help="fixed configurations of a subgroup")
    p.add_argument("--lengths", required=True)
    p.add_argument("--reflection", type=int,
                   help="shift of a single reflection")
    p.add_argument("--rotation", type=int,
                   help="order d of the rotation subgroup C_d")
    p.add_argument("--dihedral", type=int,
                   help="order d of the dihedral reflection pair D_d")
    p.add_argument("--span", type=float, help="corner span L (dihedral)")
    p.add_argument("--shift", type=int, default=0,
                   help="shift of the first reflection (dihedral)")
    p.add_argument("--count", type=int, default=3)
    common(p)
    p.set_defaults(fn=_cmd_fixed_set)

    p = sub.add_parser("classify-quad",
                       help="homeomorphism type of a symmetric quadrilateral")
    p.add_argument("--lengths", required=True)
    p.add_argument("--svg", help="write the annotated structure graph")
    common(p)
    p.set_defaults(fn=_cmd_classify_quad)

    p = sub.add_parser("pentagon-report",
                       help="equilateral pentagon verification report")
    p.add_argument("--grid", type=int, default=300)
    p.add_argument("--figures-dir", dest="figures_dir")
    p.add_argument("--csv")
    common(p)
    p.set_defaults(fn=_cmd_pentagon_report)

    p = sub.add_parser("hexagon-report",
                       help="equilateral hexagon verification report")
    p.add_argument("--figures-dir", dest="figures_dir")
    p.add_argument("--csv")
    common(p)
    p.set_defaults(fn=_cmd_hexagon_report)

    p = sub.add_parser("sample", help="interior configuration of a cell")
    p.add_argument("--lengths", required=True)
    p.add_argument("--cell", required=True)
    p.add_argument("--svg", help="also write the arrow diagram")
    common(p)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("render", help="SVG arrow diagram or complex graph")
    p.add_argument("--lengths", required=True)
    p.add_argument("--cell", help="arrow diagram of a sampled representative")
    p.add_argument("--space", default="reduced", choices=sorted(_SPACES))
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("triangle", help="triangle degenerate-space summary")
    p.add_argument("--lengths", required=True)
    common(p)
    p.set_defaults(fn=_cmd_triangle)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    started = time.monotonic()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, started)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _INFEASIBLE as exc:
        print(f"infeasible: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
