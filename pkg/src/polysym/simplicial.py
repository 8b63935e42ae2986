"""Simplicial machinery: order complexes of face posets, barycentric
subdivision, simplicial homology over the integers (Smith normal form) and
over GF(2) (bitmask elimination), plus graph and surface invariants.

Vertices are stored as integer ids with a parallel label list, so every
construction is deterministic regardless of hash randomization.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple


class SimplicialComplex:
    """Finite abstract simplicial complex.  `labels[i]` is the payload of
    vertex id i; faces are stored per dimension as sorted tuples of ids."""

    def __init__(self, labels: Sequence, maximal_simplices: Sequence[Sequence[int]]):
        self.labels = list(labels)
        self._faces: Dict[int, List[Tuple[int, ...]]] = {}
        seen = set()
        stack = [tuple(sorted(set(s))) for s in maximal_simplices]
        while stack:
            s = stack.pop()
            if s in seen or not s:
                continue
            seen.add(s)
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face and face not in seen:
                    stack.append(face)
        for s in seen:
            self._faces.setdefault(len(s) - 1, []).append(s)
        for d in self._faces:
            self._faces[d].sort()
        self._index: Dict[int, Dict[Tuple[int, ...], int]] = {
            d: {s: i for i, s in enumerate(faces)}
            for d, faces in self._faces.items()
        }

    @property
    def dim(self) -> int:
        return max(self._faces) if self._faces else -1

    def simplices(self, d: int) -> List[Tuple[int, ...]]:
        return self._faces.get(d, [])

    def f_vector(self) -> tuple:
        return tuple(len(self.simplices(d)) for d in range(self.dim + 1))

    def euler(self) -> int:
        return sum((-1) ** d * len(f) for d, f in self._faces.items())

    def boundary_matrix(self, d: int) -> List[List[int]]:
        """Rows indexed by (d-1)-simplices, columns by d-simplices."""
        rows = self.simplices(d - 1)
        cols = self.simplices(d)
        idx = self._index.get(d - 1, {})
        mat = [[0] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                mat[idx[face]][j] = (-1) ** i
        return mat

    def subcomplex(self, vertex_ids) -> "SimplicialComplex":
        keep = set(vertex_ids)
        top = [
            s
            for d in range(self.dim, -1, -1)
            for s in self.simplices(d)
            if set(s) <= keep
        ]
        # keep only faces maximal within the induced set
        maximal = []
        for s in top:
            if not any(set(s) < set(t) for t in maximal):
                maximal.append(s)
        return SimplicialComplex(self.labels, maximal) if maximal else SimplicialComplex(self.labels, [])

    def vertex_ids_used(self):
        return sorted({v for s in self.simplices(0) for v in s})


def order_complex(poset) -> SimplicialComplex:
    """Nerve of a face poset: vertices are cells, simplices are chains."""
    cells = list(poset.elements)
    n = len(cells)
    above = [[] for _ in range(n)]
    for i, q in enumerate(cells):
        for j, p in enumerate(cells):
            if q.dim < p.dim and poset.less(q, p):
                above[i].append(j)
    chains: List[Tuple[int, ...]] = []

    def extend(chain):
        extended = False
        for j in above[chain[-1]]:
            extended = True
            extend(chain + (j,))
        if not extended:
            chains.append(chain)

    for i in range(n):
        extend((i,))
    return SimplicialComplex(cells, chains)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """One barycentric subdivision; the new vertex for a face carries that
    face (as an id tuple resolved through K's labels) as its label."""
    faces = [s for d in range(K.dim + 1) for s in K.simplices(d)]
    fid = {s: i for i, s in enumerate(faces)}
    labels = [tuple(K.labels[v] for v in s) for s in faces]
    top = []
    top_faces = [
        s
        for d in range(K.dim + 1)
        for s in K.simplices(d)
        if not any(
            set(s) < set(t) for t in K.simplices(d + 1)
        )
    ]
    for s in top_faces:
        for perm in _permutations_of(s):
            flag = []
            for k in range(1, len(perm) + 1):
                flag.append(fid[tuple(sorted(perm[:k]))])
            top.append(tuple(flag))
    sub = SimplicialComplex(labels, top)
    sub.parent_faces = faces  # vertex i of sub <-> face of K (tuple of K ids)
    return sub


def _permutations_of(seq):
    from itertools import permutations

    return permutations(seq)


def smith_normal_form(mat: List[List[int]]) -> List[int]:
    """Diagonal of the Smith normal form of an integer matrix."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    r = 0
    while r < rows and r < cols:
        # locate a minimal nonzero pivot at or below/right of (r, r)
        pi = pj = -1
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                v = m[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pi, pj = i, j
            if best == 1:
                break
        if best is None:
            break
        m[r], m[pi] = m[pi], m[r]
        for row in m:
            row[r], row[pj] = row[pj], row[r]
        while True:
            # clear the pivot column
            done = True
            for i in range(r + 1, rows):
                if m[i][r]:
                    q = m[i][r] // m[r][r]
                    for j in range(r, cols):
                        m[i][j] -= q * m[r][j]
                    if m[i][r]:
                        m[r], m[i] = m[i], m[r]
                        done = False
            if not done:
                continue
            # clear the pivot row
            for j in range(r + 1, cols):
                if m[r][j]:
                    q = m[r][j] // m[r][r]
                    for i in range(r, rows):
                        m[i][j] -= q * m[i][r]
                    if m[r][j]:
                        for row in m:
                            row[r], row[j] = row[j], row[r]
                        done = False
            if done:
                break
        # pivot must divide the remaining block
        piv = m[r][r]
        offender = None
        for i in range(r + 1, rows):
            for j in range(r + 1, cols):
                if m[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(r, cols):
                m[r][j] += m[offender][j]
            continue
        diag.append(abs(piv))
        r += 1
    return diag


class HomologyProfile:
    """Integral homology in each degree: free rank and torsion invariants."""

    def __init__(self, betti: Sequence[int], torsion: Sequence[Sequence[int]]):
        self.betti = tuple(betti)
        self.torsion = tuple(tuple(t) for t in torsion)

    def group_label(self, d: int) -> str:
        parts = []
        b = self.betti[d] if d < len(self.betti) else 0
        if b == 1:
            parts.append("Z")
        elif b > 1:
            parts.append(f"Z^{b}")
        for t in (self.torsion[d] if d < len(self.torsion) else ()):
            parts.append(f"Z/{t}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "groups": [self.group_label(d) for d in range(len(self.betti))],
        }

    def __eq__(self, other):
        return (
            isinstance(other, HomologyProfile)
            and self.betti == other.betti
            and self.torsion == other.torsion
        )

    def __repr__(self):
        return f"HomologyProfile({', '.join(self.group_label(d) for d in range(len(self.betti)))})"


def homology(K: SimplicialComplex) -> HomologyProfile:
    """Integral simplicial homology via Smith normal form."""
    top = K.dim
    ranks = {}
    torsion_from = {}
    for d in range(1, top + 1):
        diag = smith_normal_form(K.boundary_matrix(d))
        ranks[d] = len(diag)
        torsion_from[d] = [x for x in diag if x > 1]
    betti = []
    torsion = []
    for d in range(top + 1):
        nd = len(K.simplices(d))
        betti.append(nd - ranks.get(d, 0) - ranks.get(d + 1, 0))
        torsion.append(torsion_from.get(d + 1, []))
    return HomologyProfile(betti, torsion)


def _gf2_rank(columns: List[int]) -> int:
    """Rank over GF(2) of a matrix given as column bitmasks."""
    pivots: List[int] = []
    rank = 0
    for col in columns:
        for p in pivots:
            low = p & -p
            if col & low:
                col ^= p
        if col:
            pivots.append(col)
            rank += 1
    return rank


def homology_mod2(K: SimplicialComplex) -> tuple:
    """Mod-2 Betti numbers."""
    top = K.dim
    ranks = {}
    for d in range(1, top + 1):
        rows = {s: i for i, s in enumerate(K.simplices(d - 1))}
        columns = []
        for s in K.simplices(d):
            mask = 0
            for i in range(len(s)):
                mask |= 1 << rows[s[:i] + s[i + 1:]]
            columns.append(mask)
        ranks[d] = _gf2_rank(columns)
    return tuple(
        len(K.simplices(d)) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        for d in range(top + 1)
    )


# -- graph invariants (complexes of dimension <= 1) --------------------------


class GraphInvariants:
    def __init__(self, b0, b1, degree_counts, arcs, special_degrees):
        self.b0 = b0
        self.b1 = b1
        self.degree_counts = degree_counts  # degree -> count over all vertices
        self.arcs = arcs
        self.special_degrees = special_degrees  # multiset over non-degree-2 vertices

    def to_json(self) -> dict:
        return {
            "b0": self.b0,
            "b1": self.b1,
            "degree_counts": {str(k): v for k, v in sorted(self.degree_counts.items())},
            "arcs": self.arcs,
            "special_degrees": sorted(self.special_degrees),
        }

    def __repr__(self):
        return (
            f"GraphInvariants(b0={self.b0}, b1={self.b1}, "
            f"arcs={self.arcs}, special={sorted(self.special_degrees)})"
        )


def graph_invariants(K: SimplicialComplex) -> GraphInvariants:
    """Topological shape of a 1-complex: components, first Betti number,
    and the arc decomposition obtained by smoothing degree-2 vertices."""
    if K.dim > 1:
        raise ValueError("graph invariants need a complex of dimension <= 1")
    verts = K.vertex_ids_used()
    edges = K.simplices(1)
    adj = {v: [] for v in verts}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    # components
    comp = {}
    b0 = 0
    for v in verts:
        if v in comp:
            continue
        stack = [v]
        comp[v] = b0
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp[w] = b0
                    stack.append(w)
        b0 += 1
    b1 = len(edges) - len(verts) + b0
    degree_counts: Dict[int, int] = {}
    for v in verts:
        degree_counts[len(adj[v])] = degree_counts.get(len(adj[v]), 0) + 1
    special = [len(adj[v]) for v in verts if len(adj[v]) != 2]
    # arcs per component: E_c - #degree-2 vertices in c, with a lone cycle
    # (all degree 2) counting as a single arc
    arcs = 0
    for c in range(b0):
        vc = [v for v in verts if comp[v] == c]
        ec = sum(1 for a, b in edges if comp[a] == c)
        deg2 = sum(1 for v in vc if len(adj[v]) == 2)
        if deg2 == len(vc) and ec:
            arcs += 1
        else:
            arcs += ec - deg2
    return GraphInvariants(b0, b1, degree_counts, arcs, special)


def is_circle(K: SimplicialComplex) -> bool:
    g = graph_invariants(K)
    return g.b0 == 1 and g.b1 == 1 and not g.special_degrees


def is_interval(K: SimplicialComplex) -> bool:
    g = graph_invariants(K)
    return g.b0 == 1 and g.b1 == 0 and sorted(g.special_degrees) == [1, 1]


# -- surface checks (2-complexes) --------------------------------------------


def vertex_link(K: SimplicialComplex, v: int) -> SimplicialComplex:
    """Link of vertex id v inside a complex of dimension <= 2."""
    top = []
    for s in K.simplices(2):
        if v in s:
            top.append(tuple(x for x in s if x != v))
    for s in K.simplices(1):
        if v in s and not any(set(s) <= set(t) for t in K.simplices(2)):
            top.append(tuple(x for x in s if x != v))
    return SimplicialComplex(K.labels, top)


def edge_triangle_counts(K: SimplicialComplex) -> Dict[Tuple[int, int], int]:
    counts = {e: 0 for e in K.simplices(1)}
    for s in K.simplices(2):
        for i in range(3):
            counts[s[:i] + s[i + 1:]] += 1
    return counts


def is_closed_surface(K: SimplicialComplex) -> bool:
    if K.dim != 2:
        return False
    if any(c != 2 for c in edge_triangle_counts(K).values()):
        return False
    return all(is_circle(vertex_link(K, v)) for v in K.vertex_ids_used())


def boundary_circles(K: SimplicialComplex) -> int:
    """Number of boundary components of a 2-complex: components of the
    graph of edges lying in exactly one triangle."""
    boundary = [e for e, c in edge_triangle_counts(K).items() if c == 1]
    if not boundary:
        return 0
    sub = SimplicialComplex(K.labels, boundary)
    return graph_invariants(sub).b0
