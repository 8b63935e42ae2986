"""Combinatorial cell complexes of reduced / fully reduced configuration
spaces: cyclic-partition cell labels, collinear vertices, the face poset,
and the orientation-reversal quotient."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

from .core import LengthVector


class EmptySpace(Exception):
    pass


class RigidPoint(Exception):
    pass


class CyclicPartition:
    """Cyclically ordered partition of {1..n} into m >= 3 parts of parallel
    arrows; open cell of dimension m - 3.  Canonical form: rotated so the
    part containing 1 comes first."""

    __slots__ = ("parts", "n", "_label")

    def __init__(self, parts: Sequence[frozenset]):
        parts = tuple(parts)
        for r, part in enumerate(parts):
            if 1 in part:
                parts = parts[r:] + parts[:r]
                break
        else:
            raise ValueError("no part contains 1")
        self.parts = parts
        self.n = sum(len(p) for p in parts)
        if set().union(*parts) != set(range(1, self.n + 1)):
            raise ValueError("parts must partition 1..n")
        self._label = "|".join(
            ",".join(str(i) for i in sorted(p)) for p in self.parts
        )

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]]) -> "CyclicPartition":
        return cls([frozenset(p) for p in parts])

    @classmethod
    def parse(cls, text: str) -> "CyclicPartition":
        return cls.from_parts(
            [int(x) for x in chunk.split(",")] for chunk in text.split("|")
        )

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def dim(self) -> int:
        return self.m - 3

    def admissible(self, lv: LengthVector) -> bool:
        half = lv.half_perimeter
        return all(
            sum((lv.length(i) for i in part), Fraction(0)) < half
            for part in self.parts
        )

    def reversed_(self) -> "CyclicPartition":
        return CyclicPartition((self.parts[0],) + tuple(reversed(self.parts[1:])))

    def label(self) -> str:
        return self._label

    def __eq__(self, other):
        return isinstance(other, CyclicPartition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"CyclicPartition({self._label})"


class CollinearVertex:
    """Fully aligned configuration: balanced split {S, S^c} with the side
    containing 1 stored; an exact rational tie with the half perimeter."""

    __slots__ = ("side", "n", "_label")

    def __init__(self, side: frozenset, n: int):
        if 1 not in side:
            side = frozenset(range(1, n + 1)) - side
        self.side = side
        self.n = n
        self._label = "lin:" + ",".join(str(i) for i in sorted(side))

    @classmethod
    def from_side(cls, side: Iterable[int], n: int) -> "CollinearVertex":
        return cls(frozenset(side), n)

    @classmethod
    def parse(cls, text: str, n: int) -> "CollinearVertex":
        assert text.startswith("lin:")
        return cls(frozenset(int(x) for x in text[4:].split(",")), n)

    @property
    def dim(self) -> int:
        return 0

    def label(self) -> str:
        return self._label

    def __eq__(self, other):
        return (
            isinstance(other, CollinearVertex)
            and self.side == other.side
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.side, self.n))

    def __repr__(self):
        return f"CollinearVertex({self._label})"


Cell = Union[CyclicPartition, CollinearVertex]


def reverse_cell(cell: Cell) -> Cell:
    """Orientation-reversal involution on cell labels; collinear vertices
    are fixed."""
    if isinstance(cell, CollinearVertex):
        return cell
    return cell.reversed_()


def boundary_relation(p: Cell, q: Cell) -> bool:
    """True iff q < p in the face order: q arises from p by merging
    cyclically adjacent parts, or q is a balanced split along a cyclically
    consecutive union of p's parts."""
    if isinstance(p, CollinearVertex):
        return False
    if isinstance(q, CollinearVertex):
        labels = []
        for part in p.parts:
            if part <= q.side:
                labels.append(0)
            elif part.isdisjoint(q.side):
                labels.append(1)
            else:
                return False
        runs = sum(1 for a, b in zip(labels, labels[1:] + labels[:1]) if a != b)
        return runs == 2
    if q.dim >= p.dim or q.n != p.n:
        return False
    # each part of p must refine a part of q
    owner = []
    for part in p.parts:
        for idx, qpart in enumerate(q.parts):
            if part <= qpart:
                owner.append(idx)
                break
        else:
            return False
    # compress cyclic runs; the run sequence must visit each q part once,
    # in q's cyclic order
    compressed = [owner[0]]
    for idx in owner[1:]:
        if idx != compressed[-1]:
            compressed.append(idx)
    if compressed[0] == compressed[-1] and len(compressed) > 1:
        compressed.pop()
    if len(compressed) != q.m or len(set(compressed)) != q.m:
        return False
    start = compressed.index(0)
    rotated = compressed[start:] + compressed[:start]
    return rotated == list(range(q.m))


class FacePoset:
    """Graded face poset of the reduced or fully reduced complex.  For the
    fully reduced space, elements are canonical representatives of the
    reversal orbits and `orbits` / `branch_points` record the quotient."""

    def __init__(self, lv: LengthVector, elements: Sequence[Cell], space: str,
                 orbits=None, branch_points=()):
        self.lengths = lv
        self.elements = tuple(elements)
        self.space = space  # 'Reduced' | 'FullyReduced'
        self.orbits = orbits or {}
        self.branch_points = tuple(branch_points)
        self._index = {c: i for i, c in enumerate(self.elements)}
        self._by_label = {c.label(): c for c in self.elements}
        self._less_cache = {}

    def __len__(self):
        return len(self.elements)

    def __contains__(self, cell):
        return cell in self._index

    def by_label(self, label: str) -> Cell:
        return self._by_label[label]

    def canonical(self, cell: Cell) -> Cell:
        """Map any cell label to its poset representative (identity on the
        reduced poset; reversal-orbit representative on the fully reduced)."""
        if cell in self._index:
            return cell
        rev = reverse_cell(cell)
        if self.space == "FullyReduced" and rev in self._index:
            return rev
        raise KeyError(cell)

    def dims(self) -> List[int]:
        return sorted({c.dim for c in self.elements})

    def cells_of_dim(self, d: int) -> List[Cell]:
        return [c for c in self.elements if c.dim == d]

    def f_vector(self) -> tuple:
        top = max((c.dim for c in self.elements), default=0)
        return tuple(len(self.cells_of_dim(d)) for d in range(top + 1))

    def euler(self) -> int:
        return sum((-1) ** c.dim for c in self.elements)

    def less(self, q: Cell, p: Cell) -> bool:
        """q < p in this poset."""
        key = (q, p)
        if key not in self._less_cache:
            if self.space == "FullyReduced":
                result = boundary_relation(p, q) or boundary_relation(
                    p, reverse_cell(q)
                )
            else:
                result = boundary_relation(p, q)
            self._less_cache[key] = result
        return self._less_cache[key]

    def below(self, p: Cell) -> List[Cell]:
        return [q for q in self.elements if self.less(q, p)]

    def closed_f_vector(self, p: Cell) -> tuple:
        """f-vector of the boundary complex of p."""
        cells = self.below(p)
        top = max((c.dim for c in cells), default=-1)
        return tuple(
            sum(1 for c in cells if c.dim == d) for d in range(top + 1)
        )


def _set_partitions_bounded(items, half, lv):
    """All set partitions of items with every block length-sum < half."""
    results = []
    blocks: List[list] = []
    sums: List[Fraction] = []

    def rec(k):
        if k == len(items):
            results.append([frozenset(b) for b in blocks])
            return
        x = items[k]
        w = lv.length(x)
        for i in range(len(blocks)):
            if sums[i] + w < half:
                blocks[i].append(x)
                sums[i] += w
                rec(k + 1)
                blocks[i].pop()
                sums[i] -= w
        if w < half:
            blocks.append([x])
            sums.append(w)
            rec(k + 1)
            blocks.pop()
            sums.pop()

    rec(0)
    return results


def _permutations(seq):
    if len(seq) <= 1:
        yield list(seq)
        return
    for i in range(len(seq)):
        rest = seq[:i] + seq[i + 1:]
        for tail in _permutations(rest):
            yield [seq[i]] + tail


def enumerate_cells(lv: LengthVector, space: str = "Reduced") -> FacePoset:
    """All admissible cyclic partitions plus all collinear vertices; the
    fully reduced poset is the reversal quotient."""
    half = lv.half_perimeter
    if any(x > half for x in lv):
        raise EmptySpace(lv)
    if any(x == half for x in lv):
        raise RigidPoint(lv)
    n = lv.n
    elements: List[Cell] = []
    for partition in _set_partitions_bounded(list(range(1, n + 1)), half, lv):
        if len(partition) < 3:
            continue
        first = next(b for b in partition if 1 in b)
        rest = [b for b in partition if b is not first]
        for order in _permutations(rest):
            elements.append(CyclicPartition([first] + order))
    # balanced splits
    from itertools import combinations

    others = list(range(2, n + 1))
    seen = set()
    for r in range(0, n):
        for combo in combinations(others, r):
            side = frozenset((1,) + combo)
            total = sum((lv.length(i) for i in side), Fraction(0))
            if total == half and side not in seen:
                seen.add(side)
                elements.append(CollinearVertex(side, n))
    elements.sort(key=lambda c: (c.dim, c.label()))
    poset = FacePoset(lv, elements, "Reduced")
    if space == "Reduced":
        return poset
    if space == "FullyReduced":
        return dihedral_reduce(poset)
    raise ValueError(f"unknown space {space!r}")


def dihedral_reduce(poset: FacePoset) -> FacePoset:
    """Quotient of the reduced poset by the orientation-reversal involution;
    collinear vertices are its fixed points (branch points)."""
    assert poset.space == "Reduced"
    orbits = {}
    branch = []
    reps = []
    handled = set()
    for cell in poset.elements:
        if cell in handled:
            continue
        rev = reverse_cell(cell)
        if rev == cell:
            branch.append(cell)
            orbits[cell] = frozenset([cell])
            reps.append(cell)
            handled.add(cell)
        else:
            rep = min(cell, rev, key=lambda c: c.label())
            orbits[rep] = frozenset([cell, rev])
            reps.append(rep)
            handled.add(cell)
            handled.add(rev)
    reps.sort(key=lambda c: (c.dim, c.label()))
    return FacePoset(poset.lengths, reps, "FullyReduced", orbits, branch)
