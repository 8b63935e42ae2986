"""Symmetry layer: the label-symmetry action on the cell complex,
stabilizers and fine-cell subdivision, quotient (symmetric) complexes via
double barycentric subdivision, and samplers for the fixed-point sets of
reflection, rotation, and dihedral subgroups."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .core import (TAU, AutGroup, DihedralElement, LengthVector,
                   VertexAngleVector, automorphism_group, full_dihedral_group,
                   relabel_normalize)
from .cells import (Cell, CollinearVertex, CyclicPartition, FacePoset,
                    enumerate_cells, reverse_cell)
from .geometry import (AngleConfig, closure_norm, measure_config,
                       relabel_config)
from .simplicial import (SimplicialComplex, barycentric_subdivision,
                         order_complex)


class ActionMismatch(Exception):
    pass


class NotAnAutomorphism(Exception):
    pass


class NotASubgroup(Exception):
    pass


class InvalidL(Exception):
    pass


class NoAllowablePair(Exception):
    pass


# -- action on cells ---------------------------------------------------------


def act_on_cell(g: DihedralElement, cell: Cell) -> Cell:
    """Left relabeling action: part members map through the forward edge
    map (new label g(x) inherits the direction of old label x), matching
    relabel_normalize on angle vectors.  The cyclic order of parts is
    preserved (flips reverse every arrow, which shifts all directions by pi
    and leaves the cyclic order unchanged)."""
    if isinstance(cell, CollinearVertex):
        return CollinearVertex(
            frozenset(g.edge(x) for x in cell.side), cell.n
        )
    return CyclicPartition(
        [frozenset(g.edge(x) for x in part) for part in cell.parts]
    )


class GroupActionTable:
    """Immutable table of the G-action on a face poset.  In the fully
    reduced poset images are canonicalized through the reversal quotient."""

    def __init__(self, G: AutGroup, poset: FacePoset):
        self.group = G
        self.poset = poset
        self.table: Dict[Tuple[str, Cell], Cell] = {}
        for g in G:
            seen = set()
            for cell in poset.elements:
                try:
                    image = poset.canonical(act_on_cell(g, cell))
                except KeyError:
                    raise ActionMismatch((g, cell))
                self.table[(g.label(), cell)] = image
                seen.add(image)
            if len(seen) != len(poset.elements):
                raise ActionMismatch(g)

    def apply(self, g: DihedralElement, cell: Cell) -> Cell:
        return self.table[(g.label(), cell)]

    def orbit(self, cell: Cell) -> frozenset:
        return frozenset(self.apply(g, cell) for g in self.group)


@dataclass
class Stabilizer:
    cell: Cell
    elements: tuple
    @property
    def order(self) -> int:
        return len(self.elements)


def stabilizer(table: GroupActionTable, cell: Cell) -> Stabilizer:
    elems = tuple(g for g in table.group if table.apply(g, cell) == cell)
    return Stabilizer(cell, elems)


# -- fine cells --------------------------------------------------------------


@dataclass(frozen=True)
class FineCellLabel:
    """One fine cell of a parent cell: the site pair (i_k, i_k +/- 1) of
    part positions (1-based, in canonical cyclic order) whose direction gap
    is smallest, plus a disambiguating tag when the stabilizer acts
    trivially on part positions."""

    parent: Cell
    site: Tuple[int, int]
    tag: Optional[str] = None

    def label(self) -> str:
        core = f"{self.parent.label()}@({self.site[0]},{self.site[1]})"
        return core if self.tag is None else f"{core}#{self.tag}"


def _position_perm(g: DihedralElement, cell: CyclicPartition) -> tuple:
    """Permutation induced on part positions by a stabilizing element."""
    raw = [frozenset(g.edge(x) for x in part) for part in cell.parts]
    index = {part: p for p, part in enumerate(cell.parts)}
    return tuple(index[part] for part in raw)


def fine_cells(table: GroupActionTable, cell: Cell) -> List[FineCellLabel]:
    stab = stabilizer(table, cell)
    if isinstance(cell, CollinearVertex):
        # a collinear vertex has no direction circle; one label per
        # stabilizer element keeps the count equal to the stabilizer order
        return [
            FineCellLabel(cell, (1, 2), g.label() if not g.is_identity else None)
            for g in stab.elements
        ]
    m = cell.m
    perms = {}
    for g in stab.elements:
        perms.setdefault(_position_perm(g, cell), []).append(g)
    kernel = perms.get(tuple(range(m)), [])
    image_size = len(perms)
    # orbit of position 0 under the induced dihedral position action
    orbit = sorted({perm[0] for perm in perms})
    has_reflection = any(_is_position_reflection(p) for p in perms)
    sites: List[Tuple[int, int]] = []
    if not has_reflection:
        # cyclic case: one site per orbit member, successor side
        for p in orbit:
            sites.append((p, (p + 1) % m))
    elif len(orbit) * 2 == image_size:
        # points of the orbit lie on reflection axes: both sides
        for p in orbit:
            sites.append((p, (p - 1) % m))
            sites.append((p, (p + 1) % m))
    else:
        # free dihedral orbit: one site per member; prefer the neighbor
        # outside the orbit when exactly one side leaves it
        for p in orbit:
            outside = [
                q for q in ((p - 1) % m, (p + 1) % m) if q not in orbit
            ]
            sites.append((p, outside[0]) if len(outside) == 1 else (p, (p + 1) % m))
    assert len(sites) == image_size, (cell, sites, image_size)
    labels = []
    for site in sites:
        site1 = (site[0] + 1, site[1] + 1)
        for g in kernel:
            tag = None if g.is_identity else g.label()
            labels.append(FineCellLabel(cell, site1, tag))
    assert len(labels) == stab.order
    return labels


def _is_position_reflection(perm: tuple) -> bool:
    m = len(perm)
    r = (perm[0] + 0) % m
    return all(perm[p] == (r - p) % m for p in range(m))


def fine_cell_membranes(labels: Sequence[FineCellLabel]) -> List[tuple]:
    """All membrane separators between fine cells of one parent, as pairs of
    site pairs suitable for membrane_residual_angles."""
    pairs = []
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if labels[i].site != labels[j].site:
                pairs.append((labels[i].site, labels[j].site))
    return pairs


def classify_fine_cell(gaps: Sequence[float], labels: Sequence[FineCellLabel],
                       margin: float = 1e-6) -> Optional[FineCellLabel]:
    """Pick the fine cell of a sampled interior point from its direction
    gaps (gap p = directed gap after part position p, 0-based).  Returns
    None when within `margin` of a membrane (caller re-samples)."""
    sites = sorted({lab.site for lab in labels})
    scored = sorted(sites, key=lambda s: gaps[s[0] - 1])
    if len(scored) > 1 and gaps[scored[1][0] - 1] - gaps[scored[0][0] - 1] < margin:
        return None
    best = scored[0]
    matches = [lab for lab in labels if lab.site == best]
    return matches[0] if matches else None


# -- quotient complexes ------------------------------------------------------


class QuotientComplex:
    def __init__(self, complex_: SimplicialComplex, projection: Dict[int, int],
                 orbit_count: int):
        self.complex = complex_
        self.projection = projection  # subdivided vertex id -> orbit vertex id
        self.orbit_count = orbit_count


def _vertex_maps_on_cells(poset: FacePoset, G: AutGroup,
                          include_reversal: bool) -> List[Dict[int, int]]:
    """Each group element as a permutation of poset element indices."""
    index = {c: i for i, c in enumerate(poset.elements)}
    table = GroupActionTable(G, poset)
    maps = []
    for g in G:
        maps.append({index[c]: index[table.apply(g, c)] for c in poset.elements})
    if include_reversal and poset.space == "Reduced":
        rev = {index[c]: index[reverse_cell(c)] for c in poset.elements}
        maps = maps + [{v: rev[m[v]] for v in m} for m in maps]
    return maps


def _lift_vertex_map(sub: SimplicialComplex, parent_map: Dict[int, int]) -> Dict[int, int]:
    """Induced vertex permutation on a barycentric subdivision."""
    fid = {f: i for i, f in enumerate(sub.parent_faces)}
    return {
        i: fid[tuple(sorted(parent_map[v] for v in face))]
        for i, face in enumerate(sub.parent_faces)
    }


def quotient_complex(poset: FacePoset, G: AutGroup,
                     include_reversal: bool = False) -> QuotientComplex:
    """Orbit complex of the double barycentric subdivision of the order
    complex under the simplicial action induced by G (optionally extended
    by the ambient orientation reversal on the reduced poset)."""
    K = order_complex(poset)
    K1 = barycentric_subdivision(K)
    K2 = barycentric_subdivision(K1)
    maps0 = _vertex_maps_on_cells(poset, G, include_reversal)
    maps2 = [_lift_vertex_map(K2, _lift_vertex_map(K1, m)) for m in maps0]
    # orbits of K2 vertices
    nverts = len(K2.parent_faces)
    rep = list(range(nverts))

    def find(x):
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    for m in maps2:
        for v, w in m.items():
            a, b = find(v), find(w)
            if a != b:
                rep[max(a, b)] = min(a, b)
    used = sorted({v for s in K2.simplices(0) for v in s})
    orbit_id = {}
    proj = {}
    for v in used:
        r = find(v)
        if r not in orbit_id:
            orbit_id[r] = len(orbit_id)
        proj[v] = orbit_id[r]
    top = []
    for d in range(K2.dim, -1, -1):
        for s in K2.simplices(d):
            image = tuple(sorted({proj[v] for v in s}))
            if len(image) != len(s):
                raise ActionMismatch(
                    "degenerate simplex in quotient; subdivision insufficient"
                )
            top.append(image)
    labels = [None] * len(orbit_id)
    for v in used:
        if labels[proj[v]] is None:
            labels[proj[v]] = K2.labels[v]
    Q = SimplicialComplex(labels, top)
    return QuotientComplex(Q, proj, len(orbit_id))


# -- realized stabilizers ----------------------------------------------------


def all_subgroups(G: AutGroup) -> List[frozenset]:
    """All subgroups, as frozensets of elements (closures of <= 2 generators,
    which suffices for cyclic and dihedral groups)."""
    elems = list(G)

    def closure(gens):
        group = {DihedralElement.identity(gens[0].n)}
        frontier = list(group)
        while frontier:
            nxt = []
            for a in frontier:
                for b in gens:
                    c = a.compose(b)
                    if c not in group:
                        group.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(group)

    subs = set()
    for a in elems:
        subs.add(closure([a]))
        for b in elems:
            subs.add(closure([a, b]))
    return sorted(subs, key=lambda s: (len(s), sorted(g.label() for g in s)))


def realized_stabilizers(lv: LengthVector, space: str = "FullyReduced"):
    """Subgroups of Aut that occur as cell stabilizers, plus the non-realized
    remainder of the subgroup lattice."""
    G = automorphism_group(lv)
    poset = enumerate_cells(lv, space)
    table = GroupActionTable(G, poset)
    realized = {frozenset(stabilizer(table, c).elements) for c in poset.elements}
    lattice = all_subgroups(G)
    missing = [s for s in lattice if s not in realized]
    return realized, missing


# -- fixed-point sets --------------------------------------------------------


@dataclass
class FixedSetReport:
    subgroup: str
    kind: str  # 'reflection' | 'rotation' | 'dihedral'
    axis_type: Optional[str]  # median | diagonal | midsegment (reflection)
    map_type: Optional[str]
    components: list  # descriptors of the discrete index set
    half_chain: Optional[tuple]  # edge labels of the open half chain
    samples: list  # AngleConfig instances

    def to_json(self) -> dict:
        return {
            "subgroup": self.subgroup,
            "kind": self.kind,
            "axis_type": self.axis_type,
            "map_type": self.map_type,
            "components": self.components,
            "half_chain": list(self.half_chain) if self.half_chain else None,
            "samples": [list(c.thetas) for c in self.samples],
        }


def _axis_classification(rho: DihedralElement) -> Tuple[str, list]:
    """median / diagonal / midsegment, with the fixed vertex or edge labels."""
    n = rho.n
    fixed_vertices = [i for i in range(1, n + 1) if rho.vertex(i) == i]
    fixed_edges = [i for i in range(1, n + 1) if rho.edge(i) == i]
    if n % 2 == 1:
        return "median", fixed_vertices + fixed_edges
    if fixed_vertices:
        return "diagonal", fixed_vertices
    return "midsegment", fixed_edges


def _chain_positions(start: Tuple[float, float], lengths, angles):
    pts = [start]
    x, y = start
    for li, th in zip(lengths, angles):
        x += li * math.cos(th)
        y += li * math.sin(th)
        pts.append((x, y))
    return pts


def _land_on_vertical(rng, lengths, x_target, start=(0.0, 0.0), tries=4000):
    """Random open chain from `start` whose last vertex has the given x
    coordinate: free angles for all edges but the last, which is solved by
    circle-line intersection."""
    for _ in range(tries):
        angles = [rng.uniform(0.0, TAU) for _ in lengths[:-1]]
        pts = _chain_positions(start, lengths[:-1], angles)
        px, py = pts[-1]
        r = lengths[-1]
        dx = x_target - px
        if abs(dx) <= r:
            dy = math.sqrt(max(r * r - dx * dx, 0.0))
            sign = 1.0 if rng.random() < 0.5 else -1.0
            end = (x_target, py + sign * dy)
            return pts + [end]
    raise Infeasible_chain()


class Infeasible_chain(Exception):
    pass


def _mirror_x(p):
    return (-p[0], p[1])


def reflection_fixed_report(lv: LengthVector, rho: DihedralElement,
                            seed: int = 0, samples: int = 3) -> FixedSetReport:
    """Fixed configurations of a single reflection: fold a sampled open
    half-chain across the geometric axis (taken as the y axis)."""
    G = automorphism_group(lv)
    if not rho.flip or rho not in G:
        raise NotAnAutomorphism(rho)
    n = lv.n
    axis_type, anchors = _axis_classification(rho)
    rng = random.Random(seed)
    out = []
    if axis_type == "median":
        # fixed vertex v on the axis; fixed edge is the opposite one
        v = [i for i in range(1, n + 1) if rho.vertex(i) == i][0]
        e_mid = [i for i in range(1, n + 1) if rho.edge(i) == i][0]
        k = (n - 1) // 2
        chain = [float(lv.length((v + j) % n or n)) for j in range(k)]
        half_chain = tuple((v + j - 1) % n + 1 for j in range(k))
        target = float(lv.length(e_mid)) / 2.0
        for _ in range(samples):
            pts = _land_on_vertical(rng, chain, target)
            verts = {}
            for j, p in enumerate(pts):
                verts[(v + j - 1) % n + 1] = p
            for lab, p in list(verts.items()):
                verts[rho.vertex(lab)] = _mirror_x(p)
            out.append(measure_config(lv, [verts[i + 1] for i in range(n)]))
        map_type = "injective"
    elif axis_type == "diagonal":
        v1 = anchors[0]
        v2 = anchors[1]
        k = n // 2
        chain = [float(lv.length((v1 + j) % n or n)) for j in range(k)]
        half_chain = tuple((v1 + j - 1) % n + 1 for j in range(k))
        for _ in range(samples):
            pts = _land_on_vertical(rng, chain, 0.0)
            verts = {}
            for j, p in enumerate(pts):
                verts[(v1 + j - 1) % n + 1] = p
            for lab, p in list(verts.items()):
                verts[rho.vertex(lab)] = _mirror_x(p)
            out.append(measure_config(lv, [verts[i + 1] for i in range(n)]))
        map_type = "injective except RP1 fibers over closing half-chains"
    else:  # midsegment
        e1, e2 = anchors[0], anchors[1]
        # vertices e1+1 .. e2 form the right half; both crossing edges are
        # perpendicular to the axis
        count = (e2 - e1) % n
        chain = [float(lv.length((e1 + j) % n or n)) for j in range(1, count)]
        half_chain = tuple((e1 + j - 1) % n + 1 for j in range(1, count))
        x0 = float(lv.length(e1)) / 2.0
        x1 = float(lv.length(e2)) / 2.0
        for _ in range(samples):
            pts = _land_on_vertical(rng, chain, x1, start=(x0, 0.0))
            verts = {}
            for j, p in enumerate(pts):
                verts[(e1 + j) % n + 1] = p
            for lab, p in list(verts.items()):
                verts[rho.vertex(lab)] = _mirror_x(p)
            out.append(measure_config(lv, [verts[i + 1] for i in range(n)]))
        map_type = "double cover"
    return FixedSetReport(
        subgroup=f"<{rho.label()}>",
        kind="reflection",
        axis_type=axis_type,
        map_type=map_type,
        components=[],
        half_chain=half_chain,
        samples=out,
    )


def star_polygon_types(d: int) -> List[int]:
    """Windings of the fully symmetric equilateral d-gon configurations:
    exterior angle 2*pi*w/d for 1 <= w <= d/2 (w = d/2 collinear)."""
    return list(range(1, d // 2 + 1))


def rotation_fixed_report(lv: LengthVector, d: int, seed: int = 0,
                          samples_per_class: int = 1) -> FixedSetReport:
    """Fixed set of the rotation subgroup C_d: components indexed by the
    fully symmetric d-gon cores; the sampler replicates an open subchain of
    n/d edges d times with direction increments 2*pi*w/d (the replicated
    sums cancel, so closure is automatic)."""
    G = automorphism_group(lv)
    n = lv.n
    if n % d or DihedralElement(n // d, False, n) not in G:
        raise NotASubgroup(("C", d))
    k = n // d
    rng = random.Random(seed)
    components = []
    out = []
    for w in star_polygon_types(d):
        collinear = (2 * w == d)
        space = "FullyReduced" if collinear else "Reduced"
        for sign in (+1, -1) if not collinear else (+1,):
            components.append({
                "winding": w,
                "collinear_core": collinear,
                "chain_space": f"{space} open chain of {k} edges",
                "branch": sign,
            })
            for _ in range(samples_per_class):
                base = sorted(rng.uniform(0.05, math.pi - 0.05) for _ in range(k))
                base = [sign * t for t in base]
                thetas = []
                for j in range(d):
                    inc = TAU * w * j / d
                    thetas.extend((t + inc) % TAU for t in base)
                out.append(AngleConfig(tuple(thetas), lv).reduced())
    return FixedSetReport(
        subgroup=f"C{d}",
        kind="rotation",
        axis_type=None,
        map_type=None,
        components=components,
        half_chain=tuple(range(1, k + 1)),
        samples=out,
    )


# -- dihedral fixed-set sampler ---------------------------------------------


def _reflect_point(p, a, b):
    """Reflect p across the line through a and b."""
    ax, ay = a
    dx, dy = b[0] - a[0], b[1] - a[1]
    norm = dx * dx + dy * dy
    px, py = p[0] - ax, p[1] - ay
    dot = (px * dx + py * dy) / norm
    fx, fy = 2 * dot * dx - px, 2 * dot * dy - py
    return (fx + ax, fy + ay)


def _line_through(point, angle):
    return (point, (point[0] + math.cos(angle), point[1] + math.sin(angle)))


def _dist_point_line(p, line):
    a, b = line
    dx, dy = b[0] - a[0], b[1] - a[1]
    return abs((p[0] - a[0]) * dy - (p[1] - a[1]) * dx) / math.hypot(dx, dy)


def _foot_on_line(p, line):
    a, b = line
    dx, dy = b[0] - a[0], b[1] - a[1]
    norm = dx * dx + dy * dy
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / norm
    return (a[0] + t * dx, a[1] + t * dy)


def _chain_straight_to_line(start, lengths, line):
    """Open chain from `start` laid straight toward the foot of the
    perpendicular on the line; valid when the chain length equals that
    distance (the fully stretched case)."""
    if not lengths:
        return [start]
    foot = _foot_on_line(start, line)
    dist = math.hypot(foot[0] - start[0], foot[1] - start[1])
    ux, uy = (foot[0] - start[0]) / dist, (foot[1] - start[1]) / dist
    pts = [start]
    cum = 0.0
    for w in lengths:
        cum += w
        pts.append((start[0] + cum * ux, start[1] + cum * uy))
    return pts


def _chain_to_line(rng, start, lengths, line, tries=6000):
    """Random open chain from `start` ending on the given line."""
    a, b = line
    ux, uy = b[0] - a[0], b[1] - a[1]
    un = math.hypot(ux, uy)
    ux, uy = ux / un, uy / un
    if not lengths:
        if _dist_point_line(start, line) > 1e-9:
            raise Infeasible_chain()
        return [start]
    for _ in range(tries):
        angles = [rng.uniform(0.0, TAU) for _ in lengths[:-1]]
        pts = _chain_positions(start, lengths[:-1], angles)
        px, py = pts[-1]
        r = lengths[-1]
        h = (px - a[0]) * (-uy) + (py - a[1]) * ux  # signed distance to line
        if abs(h) <= r:
            along = (px - a[0]) * ux + (py - a[1]) * uy
            halfchord = math.sqrt(max(r * r - h * h, 0.0))
            sign = 1.0 if rng.random() < 0.5 else -1.0
            t = along + sign * halfchord
            end = (a[0] + t * ux, a[1] + t * uy)
            return pts + [end]
    raise Infeasible_chain()


def _dihedral_subchains(lv: LengthVector, d: int, s1: int):
    """Fundamental subchain data for the dihedral pair of reflection axes
    at combinatorial points s1/2 and s1/2 + n/(2d): edge lengths from the
    fundamental vertex down to each axis, plus the length of an edge
    bisected by an axis when the axis point is an edge midpoint."""
    n = lv.n
    p1 = Fraction(s1, 2)
    p2 = p1 + Fraction(n, 2 * d)
    a = int(p1) + 1 if p1.denominator == 1 else int(math.ceil(p1))
    if a > p2:
        raise NoAllowablePair("no fundamental vertex between the axes")
    c1 = int(p1) if p1.denominator == 1 else int(math.ceil(p1))
    delta_lengths = [float(lv.length(c1 + j)) for j in range(a - c1)]
    nu1 = 0.0 if p1.denominator == 1 else float(lv.length(int(p1)))
    c2 = int(p2) if p2.denominator == 1 else int(math.floor(p2))
    theta_lengths = [float(lv.length(a + j)) for j in range(c2 - a)]
    nu2 = 0.0 if p2.denominator == 1 else float(lv.length(int(p2)))
    return delta_lengths, nu1, theta_lengths, nu2, a


def dihedral_max_span(lv: LengthVector, d: int, shift: int = 0) -> float:
    """Largest corner span L admitting configurations fixed by the dihedral
    reflection pair.  The two d-gon corners adjacent to the fundamental
    vertex are its mirror images across the two axes, which meet at angle
    pi/d at the d-gon center, so L = 2 sin(pi/d) |v - c|; the distance of
    the fundamental vertex v to each axis is bounded by the reach of the
    corresponding stretched subchain."""
    if lv.n % d:
        raise NotASubgroup(("D", d))
    delta_lengths, nu1, theta_lengths, nu2, _ = _dihedral_subchains(
        lv, d, shift % lv.n
    )
    h1 = sum(delta_lengths) + nu1 / 2.0
    h2 = sum(theta_lengths) + nu2 / 2.0
    return 2.0 * math.sqrt(
        h1 * h1 + h2 * h2 + 2.0 * h1 * h2 * math.cos(math.pi / d)
    )


def dihedral_fixed_sampler(lv: LengthVector, d: int, L: float,
                           axis_angle: Optional[float] = None, shift: int = 0,
                           seed: int = 0, count: int = 3) -> List[AngleConfig]:
    """Configurations fixed by the dihedral subgroup generated by the
    reflections with shifts `shift` and `shift + n/d`.  The orbit of one
    polygon vertex forms a regular d-gon of side L; the chain between
    consecutive d-gon corners is reconstructed from sampled fundamental
    subchains ending on the two reflection axes, then unfolded by the
    geometric reflections.  When `axis_angle` is None a feasible axis is
    located automatically (when a fundamental subchain is empty the axis is
    forced to a discrete set)."""
    G = automorphism_group(lv)
    n = lv.n
    if n % d:
        raise NotASubgroup(("D", d))
    s1 = shift % n
    s2 = (shift + n // d) % n
    rho = DihedralElement(s1, True, n)
    sigma = DihedralElement(s2, True, n)
    if rho not in G or sigma not in G:
        raise NotASubgroup((rho, sigma))
    delta_lengths, nu1, theta_lengths, nu2, a = _dihedral_subchains(lv, d, s1)
    mu1 = sum(delta_lengths)
    mu2 = sum(theta_lengths)
    L0 = dihedral_max_span(lv, d, shift=shift)
    if L > L0 + 1e-12:
        raise InvalidL((L, L0))
    stretched = abs(L - L0) <= 1e-9

    center = (L / 2.0, (L / 2.0) / math.tan(math.pi / d)) if L > 0 else (0.0, 0.0)

    def offset_line(line, dist, toward):
        (ax_, ay_), (bx_, by_) = line
        ux_, uy_ = bx_ - ax_, by_ - ay_
        un_ = math.hypot(ux_, uy_)
        nx_, ny_ = -uy_ / un_, ux_ / un_
        side = (toward[0] - ax_) * nx_ + (toward[1] - ay_) * ny_
        s_ = 1.0 if side >= 0 else -1.0
        return ((ax_ + s_ * dist * nx_, ay_ + s_ * dist * ny_),
                (bx_ + s_ * dist * nx_, by_ + s_ * dist * ny_))

    def frame(beta):
        line_k = _line_through(center, beta)
        line_m = _line_through(center, beta + math.pi / d)
        xA = _reflect_point((0.0, 0.0), *line_k)
        target_k = line_k if nu1 == 0.0 else offset_line(line_k, nu1 / 2.0, xA)
        target_m = line_m if nu2 == 0.0 else offset_line(line_m, nu2 / 2.0, xA)
        viol = max(_dist_point_line(xA, target_k) - mu1,
                   _dist_point_line(xA, target_m) - mu2)
        return viol, line_k, line_m, xA, target_k, target_m

    if axis_angle is not None:
        beta = axis_angle
        if frame(beta)[0] > 1e-9:
            raise NoAllowablePair((L, beta, frame(beta)[0]))
    else:
        grid = [math.pi * i / 720.0 for i in range(720)]
        vals = [frame(b)[0] for b in grid]
        interior = [b for b, v in zip(grid, vals) if v <= -1e-6]
        if interior:
            beta = interior[len(interior) // 2]
        else:
            # constrained axis: minimize the violation by ternary search
            i0 = min(range(len(grid)), key=lambda i: vals[i])
            lo = grid[i0] - math.pi / 720.0
            hi = grid[i0] + math.pi / 720.0
            for _ in range(200):
                m1 = lo + (hi - lo) / 3.0
                m2 = hi - (hi - lo) / 3.0
                if frame(m1)[0] <= frame(m2)[0]:
                    hi = m2
                else:
                    lo = m1
            beta = 0.5 * (lo + hi)
            if frame(beta)[0] > 1e-9:
                raise NoAllowablePair((L, frame(beta)[0]))
    _, line_k, line_m, xA, target_k, target_m = frame(beta)

    rng = random.Random(seed)
    configs = []
    for _ in range(1 if stretched else count):
        if stretched:
            # at L = L0 both subchains are forced straight onto the feet of
            # the perpendiculars, so the configuration is unique
            pts_d = _chain_straight_to_line(xA, list(reversed(delta_lengths)),
                                            target_k)
            pts_t = _chain_straight_to_line(xA, theta_lengths, target_m)
        else:
            pts_d = _chain_to_line(rng, xA, list(reversed(delta_lengths)),
                                   target_k)
            pts_t = _chain_to_line(rng, xA, theta_lengths, target_m)
        verts: Dict[int, Tuple[float, float]] = {}
        for j, p in enumerate(pts_d):  # a, a-1, ..., c1
            verts[((a - j - 1) % n) + 1] = p
        for j, p in enumerate(pts_t):  # a, a+1, ..., c2
            verts[((a + j - 1) % n) + 1] = p
        # unfold by the geometric reflections matching the label reflections
        changed = True
        while changed and len(verts) < n:
            changed = False
            for lab, p in list(verts.items()):
                for refl, line in ((rho, line_k), (sigma, line_m)):
                    img = refl.vertex(lab)
                    if img not in verts:
                        verts[img] = _reflect_point(p, *line)
                        changed = True
        if len(verts) < n:
            raise ActionMismatch("reflection orbit did not cover all vertices")
        configs.append(measure_config(lv, [verts[i + 1] for i in range(n)]))
    return configs


def verify_fixed(lv: LengthVector, config: AngleConfig,
                 elements: Sequence[DihedralElement], tol: float = 1e-9,
                 space: str = "FullyReduced") -> bool:
    """True when the configuration is closed and invariant under every
    listed symmetry — exactly in the reduced space, up to ambient
    orientation reversal in the fully reduced one."""
    if closure_norm(lv, config) > tol:
        return False
    phi = config.vertex_angles()
    reversed_phi = VertexAngleVector(-a for a in phi)
    for g in elements:
        image = relabel_normalize(g, phi)
        if image.close_to(phi, tol):
            continue
        if space == "FullyReduced" and image.close_to(reversed_phi, tol):
            continue
        return False
    return True
