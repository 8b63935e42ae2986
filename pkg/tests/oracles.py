"""Independent brute-force oracles.

Everything here is written from first principles against the definitions,
deliberately sharing no code with the package: naive exhaustive
enumeration with exact rationals.  Tests compare package output against
these oracles; the two routes must never be collapsed.
"""
from fractions import Fraction
from itertools import permutations


# ---------------------------------------------------------------------------
# symmetry groups, by exhaustive permutation check


def brute_force_symmetries(lengths):
    """All of the 2n dihedral relabelings (as edge permutations) that
    preserve the length word.  Returns the list of (rotation, flipped)
    pairs acting on edge indices 0..n-1."""
    word = [Fraction(x) for x in lengths]
    n = len(word)
    out = []
    for r in range(n):
        if all(word[(i + r) % n] == word[i] for i in range(n)):
            out.append((r, False))
        # a flip reverses the cyclic order of edges
        if all(word[(r - i) % n] == word[i] for i in range(n)):
            out.append((r, True))
    return out


# ---------------------------------------------------------------------------
# open cells, by exhaustive enumeration of cyclically ordered partitions


def _set_partitions(items):
    """All partitions of a list into nonempty blocks (unordered)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def brute_force_open_cells(lengths):
    """All admissible cyclically ordered partitions of the edge labels,
    canonicalized by rotating the block containing label 1 to the front.
    Returns a set of tuples of frozensets."""
    word = [Fraction(x) for x in lengths]
    n = len(word)
    half = sum(word) / 2
    labels = list(range(1, n + 1))
    found = set()
    for blocks in _set_partitions(labels):
        m = len(blocks)
        if m < 3:
            continue
        if any(sum(word[i - 1] for i in blk) >= half for blk in blocks):
            continue
        # every circular arrangement of the blocks, keeping the block with
        # label 1 first to quotient out rotation
        first = next(b for b in blocks if 1 in b)
        others = [b for b in blocks if b is not first]
        for order in permutations(others):
            found.add(tuple(frozenset(b) for b in (first,) + order))
    return found


def brute_force_collinear_vertices(lengths):
    """All balanced splits {S, S^c} with 1 in S and equal side sums."""
    word = [Fraction(x) for x in lengths]
    n = len(word)
    half = sum(word) / 2
    out = set()
    for mask in range(1 << (n - 1)):
        side = frozenset(
            {1} | {i + 2 for i in range(n - 1) if mask >> i & 1}
        )
        if sum(word[i - 1] for i in side) == half:
            out.add(side)
    return out


def brute_force_f_vector(lengths):
    """f-vector of the reduced complex: dimension = blocks - 3, plus the
    collinear configurations as extra 0-cells."""
    cells = brute_force_open_cells(lengths)
    counts = {}
    for cell in cells:
        d = len(cell) - 3
        counts[d] = counts.get(d, 0) + 1
    counts[0] = counts.get(0, 0) + len(brute_force_collinear_vertices(lengths))
    return tuple(counts.get(d, 0) for d in range(max(counts) + 1))


# ---------------------------------------------------------------------------
# Smith normal form invariants, via exact rational rank and determinant
# divisors (no row reduction over the integers)


def rational_rank(mat):
    """Rank over Q by fraction-exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in mat]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def determinant_divisors(mat, upto):
    """d_k = gcd of all k x k minors, for k = 1..upto (0 if all vanish).
    The k-th Smith invariant is d_k / d_{k-1}."""
    from itertools import combinations
    from math import gcd

    rows = len(mat)
    cols = len(mat[0]) if rows else 0

    def minor_det(ri, ci):
        sub = [[mat[i][j] for j in ci] for i in ri]
        # integer Bareiss would be overkill at oracle sizes; use expansion
        k = len(sub)
        if k == 1:
            return sub[0][0]
        det = 0
        for j in range(k):
            if sub[0][j]:
                mm = [row[:j] + row[j + 1:] for row in sub[1:]]
                det += (-1) ** j * sub[0][j] * _det(mm)
        return det

    def _det(sub):
        k = len(sub)
        if k == 1:
            return sub[0][0]
        det = 0
        for j in range(k):
            if sub[0][j]:
                mm = [row[:j] + row[j + 1:] for row in sub[1:]]
                det += (-1) ** j * sub[0][j] * _det(mm)
        return det

    out = []
    for k in range(1, upto + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = gcd(g, abs(minor_det(ri, ci)))
                if g == 1:
                    break
            if g == 1:
                break
        out.append(g)
    return out


# ---------------------------------------------------------------------------
# small reference complexes with known homology


def circle_complex(n=6):
    """Maximal simplices of an n-gon boundary (a circle)."""
    return [str(i) for i in range(n)], [
        (i, (i + 1) % n) for i in range(n)
    ]


def sphere_complex():
    """Boundary of the 3-simplex (a 2-sphere)."""
    verts = ["0", "1", "2", "3"]
    tris = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    return verts, tris


def projective_plane_complex():
    """The minimal 6-vertex triangulation of the real projective plane."""
    verts = [str(i) for i in range(1, 7)]
    tris = [
        (0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 5), (0, 4, 5),
        (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 3, 4), (3, 4, 5),
    ]
    return verts, tris


def torus_complex():
    """A 9-vertex triangulated torus (3x3 grid with wraparound)."""
    verts = [str(i) for i in range(9)]
    tris = []
    for a in range(3):
        for b in range(3):
            v = lambda x, y: (x % 3) * 3 + (y % 3)
            tris.append((v(a, b), v(a + 1, b), v(a, b + 1)))
            tris.append((v(a + 1, b), v(a, b + 1), v(a + 1, b + 1)))
    return verts, tris
