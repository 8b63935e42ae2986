"""Length vectors as cyclic words, their symmetry structure, and the
relabel-and-renormalize action on vertex-angle vectors.

Edge-index convention: edge i joins vertices i and i+1 (mod n), labels 1..n.
A DihedralElement acts on vertex labels; its edge action is derived.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

TAU = 2.0 * math.pi


def parse_rational(text: str) -> Fraction:
    """Parse an integer, p/q, or decimal literal into an exact Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(text)  # Fraction parses decimals exactly


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class LengthVector:
    """Cyclic word of n >= 3 positive rationals.  Stored in given order;
    cyclic equivalence is a relation, not a normalization."""

    def __init__(self, lengths: Iterable):
        vals = tuple(Fraction(x) for x in lengths)
        if len(vals) < 3:
            raise ValueError("need at least 3 lengths")
        if any(v <= 0 for v in vals):
            raise ValueError("lengths must be positive")
        self.lengths = vals
        self.n = len(vals)

    @classmethod
    def parse(cls, text: str) -> "LengthVector":
        return cls(parse_rational(part) for part in text.split(","))

    @property
    def total(self) -> Fraction:
        return sum(self.lengths, Fraction(0))

    @property
    def half_perimeter(self) -> Fraction:
        return self.total / 2

    def length(self, edge: int) -> Fraction:
        """Length of edge label in 1..n."""
        return self.lengths[(edge - 1) % self.n]

    def rotated(self, r: int) -> "LengthVector":
        n = self.n
        return LengthVector(self.lengths[(i + r) % n] for i in range(n))

    def to_json(self) -> dict:
        return {"lengths": [format_rational(v) for v in self.lengths]}

    def __iter__(self):
        return iter(self.lengths)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, LengthVector) and self.lengths == other.lengths

    def __hash__(self):
        return hash(self.lengths)

    def __repr__(self):
        return f"LengthVector({', '.join(format_rational(v) for v in self.lengths)})"


@dataclass(frozen=True)
class DihedralElement:
    """Vertex-label symmetry i -> i+shift (flip=False) or i -> shift-i
    (flip=True), labels mod n in 1..n."""

    shift: int
    flip: bool
    n: int

    def __post_init__(self):
        object.__setattr__(self, "shift", self.shift % self.n)

    @classmethod
    def identity(cls, n: int) -> "DihedralElement":
        return cls(0, False, n)

    def vertex(self, i: int) -> int:
        j = (self.shift - i) if self.flip else (i + self.shift)
        return (j - 1) % self.n + 1

    def edge(self, i: int) -> int:
        # edge i = {i, i+1}; its image is the edge joining the two image vertices
        j = (self.shift - 1 - i) if self.flip else (i + self.shift)
        return (j - 1) % self.n + 1

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        """Returns self after other: (self*other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("mismatched n")
        if self.flip:
            return DihedralElement(self.shift - other.shift, not other.flip, self.n)
        return DihedralElement(self.shift + other.shift, other.flip, self.n)

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return self
        return DihedralElement(-self.shift, False, self.n)

    @property
    def is_identity(self) -> bool:
        return self.shift == 0 and not self.flip

    def preserves(self, lv: LengthVector) -> bool:
        return all(lv.length(self.edge(i)) == lv.length(i) for i in range(1, lv.n + 1))

    def label(self) -> str:
        return f"{'f' if self.flip else 'r'}{self.shift}"

    def __repr__(self):
        return f"DihedralElement(shift={self.shift}, flip={self.flip}, n={self.n})"


def full_dihedral_group(n: int) -> list[DihedralElement]:
    return [DihedralElement(s, f, n) for f in (False, True) for s in range(n)]


@dataclass(frozen=True)
class Reflectivity:
    kind: Optional[str]  # 'Palindromic' | 'Reflective' | None
    axes: tuple  # all length-preserving flip elements


class AutGroup:
    """All length-preserving dihedral label symmetries of a length vector."""

    def __init__(self, elements: Sequence[DihedralElement], kind: str, k: int):
        self.elements = tuple(elements)
        self.kind = kind  # 'Cyclic' or 'Dihedral'
        self.k = k

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __repr__(self):
        return f"AutGroup({self.kind}({self.k}), order {self.order})"


def order_of(lv: LengthVector) -> int:
    """Maximal k | n such that the cyclic word is a k-fold repetition."""
    n = lv.n
    for period in range(1, n + 1):
        if n % period == 0 and all(
            lv.lengths[i] == lv.lengths[(i + period) % n] for i in range(n)
        ):
            return n // period
    return 1


def _is_palindrome_rotation(word: Sequence) -> bool:
    n = len(word)
    for r in range(n):
        rot = [word[(i + r) % n] for i in range(n)]
        if rot == rot[::-1]:
            return True
    return False


def reflectivity(lv: LengthVector) -> Reflectivity:
    word = list(lv.lengths)
    n = len(word)
    axes = tuple(
        g for g in full_dihedral_group(lv.n) if g.flip and g.preserves(lv)
    )
    if _is_palindrome_rotation(word):
        # axis through a vertex (and, for odd n, the opposite edge midpoint)
        kind = "Palindromic"
    elif n % 2 == 0 and any(
        (lambda w: w == w[::-1])(word[i + 1:] + word[:i]) for i in range(n)
    ):
        # even n: axis through the midpoints of two opposite edges; the word
        # read from one side of the dropped edge is a linear palindrome
        kind = "Reflective"
    else:
        kind = None
    # the word rules and the explicit flip search must agree
    assert (kind is not None) == bool(axes)
    return Reflectivity(kind, axes)


def automorphism_group(lv: LengthVector) -> AutGroup:
    elements = [g for g in full_dihedral_group(lv.n) if g.preserves(lv)]
    k = order_of(lv)
    refl = reflectivity(lv)
    kind = "Dihedral" if refl.kind is not None else "Cyclic"
    expected = 2 * k if kind == "Dihedral" else k
    assert len(elements) == expected, (lv, len(elements), expected)
    rotations = sorted((g for g in elements if not g.flip), key=lambda g: g.shift)
    flips = sorted((g for g in elements if g.flip), key=lambda g: g.shift)
    return AutGroup(rotations + flips, kind, k)


class VertexAngleVector:
    """Vertex angles (phi_1..phi_n) of a reduced configuration, each in
    [0, 2pi), measured counterclockwise from the forward edge."""

    def __init__(self, angles: Iterable[float]):
        self.angles = tuple(a % TAU for a in angles)
        self.n = len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.angles[i]

    def close_to(self, other: "VertexAngleVector", tol: float = 1e-9) -> bool:
        if self.n != other.n:
            return False
        return all(
            min(abs(a - b), TAU - abs(a - b)) <= tol
            for a, b in zip(self.angles, other.angles)
        )

    def __repr__(self):
        return f"VertexAngleVector({', '.join(f'{a:.6f}' for a in self.angles)})"


def relabel_normalize(g: DihedralElement, phi: VertexAngleVector) -> VertexAngleVector:
    """The relabel-then-renormalize action on vertex angles: permuted for
    orientation-preserving g, negated-and-permuted for orientation-reversing g."""
    if len(phi) != g.n:
        raise ValueError("size mismatch")
    inv = g.inverse()
    if g.flip:
        return VertexAngleVector(-phi[inv.vertex(i) - 1] for i in range(1, g.n + 1))
    return VertexAngleVector(phi[inv.vertex(i) - 1] for i in range(1, g.n + 1))
