"""Numerical layer: arrow diagrams, closure constraints, tangent half-angle
and Moebius/affine coordinates, membrane residuals, cell-representative
solving, sign vectors, and the open-chain membership recursion."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .core import TAU, DihedralElement, LengthVector, VertexAngleVector

EPS_EXACT = 1e-12


class DegenerateCell(Exception):
    pass


class Infeasible(Exception):
    pass


class Aligned(Exception):
    pass


class _Infinity:
    """The point at infinity of the projectively extended real line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = _Infinity()


@dataclass(frozen=True)
class AngleConfig:
    """Arrow diagram: direction angles theta_i in [0, 2pi)."""

    thetas: tuple
    lengths: LengthVector

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(t % TAU for t in self.thetas))
        if len(self.thetas) != self.lengths.n:
            raise ValueError("size mismatch")

    @property
    def n(self):
        return self.lengths.n

    def reduced(self) -> "AngleConfig":
        t0 = self.thetas[0]
        return AngleConfig(tuple(t - t0 for t in self.thetas), self.lengths)

    def theta(self, i: int) -> float:
        """1-based arrow angle."""
        return self.thetas[(i - 1) % self.n]

    def positions(self) -> list:
        """Vertex coordinates A_1..A_n with A_1 at the origin."""
        pts = [(0.0, 0.0)]
        x = y = 0.0
        for li, th in zip(self.lengths, self.thetas):
            x += float(li) * math.cos(th)
            y += float(li) * math.sin(th)
            pts.append((x, y))
        return pts  # n+1 entries; the last is the closure endpoint

    def vertex_angles(self) -> VertexAngleVector:
        n = self.n
        return VertexAngleVector(
            (self.thetas[i - 1] + math.pi - self.thetas[i]) % TAU
            for i in range(n)
        )


def closure_residual(lv: LengthVector, config: AngleConfig) -> Tuple[float, float]:
    x = sum(float(li) * math.cos(th) for li, th in zip(lv, config.thetas))
    y = sum(float(li) * math.sin(th) for li, th in zip(lv, config.thetas))
    return (x, y)


def closure_norm(lv: LengthVector, config: AngleConfig) -> float:
    x, y = closure_residual(lv, config)
    return math.hypot(x, y)


def thetas_from_vertex_angles(phi: VertexAngleVector) -> tuple:
    """Reduced arrow angles (theta_1 = 0) from vertex angles."""
    thetas = [0.0]
    for i in range(1, len(phi)):
        thetas.append((thetas[-1] + math.pi - phi[i]) % TAU)
    return tuple(thetas)


def measure_config(lv: LengthVector, points: Sequence[Tuple[float, float]]) -> AngleConfig:
    """Arrow diagram of a closed polygon given by its n vertices, reduced."""
    n = lv.n
    thetas = []
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        thetas.append(math.atan2(y1 - y0, x1 - x0))
    return AngleConfig(tuple(thetas), lv).reduced()


def relabel_config(g: DihedralElement, config: AngleConfig) -> AngleConfig:
    """Left action of a length-preserving label symmetry on arrow diagrams:
    theta'_i = theta_{g^{-1}(i)} for rotations, theta_{g^{-1}(i)} + pi for
    flips (every arrow reverses), then reduce.  Matches relabel_normalize
    on vertex angles and act_on_cell on cell labels."""
    shiftpi = math.pi if g.flip else 0.0
    inv = g.inverse()
    thetas = tuple(
        config.theta(inv.edge(i)) + shiftpi for i in range(1, config.n + 1)
    )
    return AngleConfig(thetas, config.lengths).reduced()


def ambient_reverse(config: AngleConfig) -> AngleConfig:
    """Reflection of the plane (orientation reversal), reduced."""
    return AngleConfig(tuple(-t for t in config.thetas), config.lengths).reduced()


# ---------------------------------------------------------------------------
# tangent half-angle / Moebius / affine coordinates

@dataclass(frozen=True)
class TangentCoords:
    t: tuple  # floats or INF

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i):
        return self.t[i]

    def value(self, i: int):
        """1-based."""
        return self.t[i - 1]


@dataclass(frozen=True)
class AffineCoords:
    s: tuple


def tangent_halfangle(config: AngleConfig) -> TangentCoords:
    vals = []
    for th in config.thetas:
        if abs(th - math.pi) <= EPS_EXACT:
            vals.append(INF)
        else:
            vals.append(math.tan(th / 2.0))
    return TangentCoords(tuple(vals))


def angles_from_tangent(t: TangentCoords, lv: LengthVector) -> AngleConfig:
    thetas = tuple(
        math.pi if v is INF else (2.0 * math.atan(v)) % TAU for v in t.t
    )
    return AngleConfig(thetas, lv)


def closure_residual_tangent(lv: LengthVector, t: TangentCoords) -> Tuple[float, float]:
    """Closure equations in t-coordinates via the rational parametrization
    cos = (1-t^2)/(1+t^2), sin = 2t/(1+t^2); t = INF contributes (-1, 0)."""
    x = y = 0.0
    for li, v in zip(lv, t.t):
        li = float(li)
        if v is INF:
            x -= li
        else:
            d = 1.0 + v * v
            x += li * (1.0 - v * v) / d
            y += li * 2.0 * v / d
    return (x, y)


def _homog(v):
    if v is INF:
        return (1.0, 0.0)
    return (float(v), 1.0)


def _det(p, q):
    return p[0] * q[1] - p[1] * q[0]


def moebius_value(z, t1, t2, tn):
    """P(z) for the unique Moebius map with t1 -> INF, t2 -> 0, tn -> 1."""
    hz, h1, h2, hn = _homog(z), _homog(t1), _homog(t2), _homog(tn)
    num = _det(hz, h2) * _det(hn, h1)
    den = _det(hz, h1) * _det(hn, h2)
    if den == 0.0:
        return INF
    return num / den


def moebius_normalize(t: TangentCoords) -> AffineCoords:
    """Affine coordinates (P(t_3), ..., P(t_{n-1})) pinning t1 -> INF,
    t2 -> 0, tn -> 1."""
    n = len(t)
    t1, t2, tn = t.t[0], t.t[1], t.t[-1]
    pairs = [(t1, t2), (t1, tn), (t2, tn)]
    for a, b in pairs:
        if _det(_homog(a), _homog(b)) == 0.0:
            raise DegenerateCell("pinned coordinates coincide")
    vals = []
    for z in t.t[2:-1]:
        w = moebius_value(z, t1, t2, tn)
        if w is INF:
            raise DegenerateCell("interior coordinate maps to infinity")
        vals.append(w)
    return AffineCoords(tuple(vals))


def moebius_denormalize(s: AffineCoords, t1, t2, tn) -> tuple:
    """Inverse of moebius_normalize on the free coordinates: the Moebius map
    sending INF -> t1, 0 -> t2, 1 -> tn applied to each s value."""
    h1, h2, hn = _homog(t1), _homog(t2), _homog(tn)
    k1 = _det(hn, h1)
    k2 = _det(hn, h2)
    # forward matrix rows from P(z) = det(z,t2)*k1 / (det(z,t1)*k2)
    a, b = h2[1] * k1, -h2[0] * k1
    c, d = h1[1] * k2, -h1[0] * k2
    # inverse (adjugate) applied to (w, 1)
    out = []
    for w in s.s:
        z0 = d * w - b
        z1 = -c * w + a
        out.append(INF if z1 == 0.0 else z0 / z1)
    return tuple(out)


# ---------------------------------------------------------------------------
# membranes

def successor_gap(config_or_thetas, i: int) -> float:
    """Directed gap (theta_{i+1} - theta_i) mod 2pi, 1-based index."""
    thetas = (
        config_or_thetas.thetas
        if isinstance(config_or_thetas, AngleConfig)
        else tuple(config_or_thetas)
    )
    n = len(thetas)
    return (thetas[i % n] - thetas[(i - 1) % n]) % TAU


def predecessor_gap(config_or_thetas, i: int) -> float:
    """Directed gap (theta_i - theta_{i-1}) mod 2pi, 1-based index."""
    thetas = (
        config_or_thetas.thetas
        if isinstance(config_or_thetas, AngleConfig)
        else tuple(config_or_thetas)
    )
    n = len(thetas)
    return (thetas[(i - 1) % n] - thetas[(i - 2) % n]) % TAU


def membrane_residual_angles(config_or_thetas, sites, variant: str = "b") -> float:
    """Difference of the two designated angle gaps; zero on the membrane.

    variant 'b' (also the reduced-space form): gap after i_k minus gap
    after j_m.  variant 'a': gap before i_k minus gap after j_m+1 (the
    fully reduced form used when the two fine cells share i_k)."""
    ik, jm = sites
    if variant == "a":
        return predecessor_gap(config_or_thetas, ik) - successor_gap(
            config_or_thetas, jm + 1
        )
    return successor_gap(config_or_thetas, ik) - successor_gap(config_or_thetas, jm)


def membrane_residual_tangent(t: TangentCoords, sites) -> float:
    """t_i*t_j*t_k - (t_k - t_j - t_i), the tangent form with t_1 = 0 pinned
    (i = i_k+1, j = j_m, k = j_m+1)."""
    if abs(t.t[0]) > EPS_EXACT:
        raise ValueError("tangent form requires t_1 = 0")
    i, j, k = sites
    ti, tj, tk = t.value(i), t.value(j), t.value(k)
    return ti * tj * tk - (tk - tj - ti)


def membrane_residual_affine(t2: float, tn: float, si: float, sj: float, sk: float) -> float:
    """Cross-multiplied affine form of the same membrane: zero exactly when
    the tangent form is, with matching sign whenever t_i*t_j*t_k > 0."""
    def aff(x):
        return (t2 - tn) * x + tn

    ai, aj, ak = aff(si), aff(sj), aff(sk)
    return t2 * t2 * tn * tn - (ai * aj - ai * ak - aj * ak)


# ---------------------------------------------------------------------------
# sign vectors (pentagon)

@dataclass(frozen=True)
class SignVector:
    signs: tuple  # '-' / '+'
    primed: bool = False

    def label(self) -> str:
        return "".join(self.signs) + ("'" if self.primed else "")


def turning_number(phi: VertexAngleVector) -> int:
    """Turning number of a polygon with no straight or folded vertex;
    exterior angle at vertex i is pi - phi_i."""
    total = sum(math.pi - a for a in phi)
    w = total / TAU
    r = round(w)
    if abs(w - r) > 1e-6:
        raise Aligned("turning number not integral; configuration not closed/regular")
    return int(r)


def sign_vector(phi: VertexAngleVector) -> SignVector:
    signs = []
    for a in phi:
        if min(a, TAU - a) <= EPS_EXACT or abs(a - math.pi) <= EPS_EXACT:
            raise Aligned("vertex angle on a cell boundary")
        signs.append("-" if a < math.pi else "+")
    signs = tuple(signs)
    primed = False
    if len(set(signs)) == 1:
        # the two all-equal cells are separated by the turning number:
        # winding +-1 is the convex cell, +-2 the pentagram cell
        w = turning_number(phi)
        primed = abs(w) == 2
    return SignVector(signs, primed)


# ---------------------------------------------------------------------------
# open-chain membership (fully reduced spaces of open chains)

def open_chain_fully_reduced_membership(thetas: Sequence[float]) -> bool:
    """Membership in the fully reduced space of an open chain with the given
    relative angles: the first angle off the axis must point into the upper
    half-plane, with the parity of preceding pi-angles reversing the rule."""
    flipped = False
    for th in thetas:
        th = th % TAU
        if min(th, TAU - th) <= EPS_EXACT:
            continue
        if abs(th - math.pi) <= EPS_EXACT:
            flipped = not flipped
            continue
        upper = 0.0 < th < math.pi
        return upper != flipped
    return True


# ---------------------------------------------------------------------------
# cell representatives

def derive_cell(lv: LengthVector, config: AngleConfig, tol: float = 1e-6):
    """Combinatorial cell of a configuration: cluster equal directions and
    read off their cyclic order (or the balanced split if fully aligned)."""
    from .cells import CollinearVertex, CyclicPartition

    n = lv.n
    order = sorted(range(1, n + 1), key=lambda i: config.theta(i))
    groups = [[order[0]]]
    for i in order[1:]:
        if config.theta(i) - config.theta(groups[-1][-1]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    # circular wrap: first and last group may be one cluster
    if len(groups) > 1:
        wrap = (config.theta(groups[0][0]) + TAU) - config.theta(groups[-1][-1])
        if wrap <= tol:
            groups[0] = groups[-1] + groups[0]
            groups.pop()
    if len(groups) == 2:
        a = config.theta(groups[0][0])
        b = config.theta(groups[1][0])
        if abs(abs(b - a) - math.pi) <= tol:
            return CollinearVertex.from_side(groups[0], n)
    if len(groups) < 3:
        raise DegenerateCell("fewer than three direction groups and not aligned")
    return CyclicPartition.from_parts([frozenset(g) for g in groups])


def solve_cell_representative(lv: LengthVector, cell, seed: int = 0,
                              min_gap: float = 1e-3) -> AngleConfig:
    """A closed configuration realizing the given cyclic partition: damped
    Gauss-Newton on the two closure equations over the part directions,
    keeping the prescribed strict cyclic order.  Deterministic per seed."""
    if not cell.admissible(lv):
        raise Infeasible("inadmissible cell")
    parts = cell.parts
    m = len(parts)
    weights = [sum(float(lv.length(i)) for i in part) for part in parts]
    rng = random.Random(seed)
    budget = 10_000

    def attempt(psis):
        nonlocal budget
        psis = list(psis)
        for _ in range(200):
            if budget <= 0:
                return None
            budget -= 1
            fx = sum(w * math.cos(p) for w, p in zip(weights, psis))
            fy = sum(w * math.sin(p) for w, p in zip(weights, psis))
            norm = math.hypot(fx, fy)
            if norm <= 1e-13:
                return psis
            # least-norm Gauss-Newton step over psi_2..psi_m (psi_1 = 0 fixed)
            rows = [
                [-weights[j] * math.sin(psis[j]) for j in range(1, m)],
                [weights[j] * math.cos(psis[j]) for j in range(1, m)],
            ]
            step = _least_norm_step(rows, [fx, fy])
            if step is None:
                return None
            scale = 1.0
            for _ in range(40):
                cand = psis[:1] + [
                    psis[j] - scale * step[j - 1] for j in range(1, m)
                ]
                if _strictly_ordered(cand):
                    cx = sum(w * math.cos(p) for w, p in zip(weights, cand))
                    cy = sum(w * math.sin(p) for w, p in zip(weights, cand))
                    if math.hypot(cx, cy) < norm:
                        psis = cand
                        break
                scale /= 2.0
            else:
                return None
        return None

    def _strictly_ordered(psis):
        return all(psis[j] < psis[j + 1] for j in range(m - 1)) and (
            0.0 < psis[1] and psis[-1] < TAU
        )

    seeds = [[TAU * j / m for j in range(m)]]
    while budget > 0:
        for psis in seeds:
            sol = attempt(psis)
            if sol is not None:
                sol = _enforce_separation(sol, weights, min_gap, budget)
                if sol is not None:
                    thetas = [0.0] * lv.n
                    for pos, part in enumerate(parts):
                        for i in part:
                            thetas[i - 1] = sol[pos] % TAU
                    config = AngleConfig(tuple(thetas), lv).reduced()
                    if closure_norm(lv, config) <= 1e-10:
                        return config
        gaps = [rng.uniform(0.2, 1.0) for _ in range(m)]
        total = sum(gaps)
        acc, seeds = 0.0, [[]]
        for g in gaps:
            seeds[0].append(acc)
            acc += g * TAU / total
    raise Infeasible("no representative found within the iteration budget")


def _enforce_separation(psis, weights, min_gap, budget):
    """Push the solution along the closure-preserving directions until all
    cyclic gaps are >= min_gap, re-solving closure after each push."""
    m = len(psis)
    for _ in range(60):
        gaps = [(psis[(j + 1) % m] - psis[j]) % TAU for j in range(m)]
        if min(gaps) >= min_gap:
            return psis
        worst = min(range(m), key=lambda j: gaps[j])
        # widen the worst gap symmetrically, then restore closure
        delta = (min_gap - gaps[worst]) * 0.75 + 1e-4
        cand = list(psis)
        nxt = (worst + 1) % m
        if nxt != 0:
            cand[nxt] += delta
        if worst != 0:
            cand[worst] -= delta
        cand = [0.0] + sorted(p % TAU for p in cand[1:])
        fixed = _resolve_closure(cand, weights)
        if fixed is None:
            return None
        psis = fixed
    return None


def _resolve_closure(psis, weights):
    m = len(psis)
    for _ in range(100):
        fx = sum(w * math.cos(p) for w, p in zip(weights, psis))
        fy = sum(w * math.sin(p) for w, p in zip(weights, psis))
        if math.hypot(fx, fy) <= 1e-13:
            return psis
        rows = [
            [-weights[j] * math.sin(psis[j]) for j in range(1, m)],
            [weights[j] * math.cos(psis[j]) for j in range(1, m)],
        ]
        step = _least_norm_step(rows, [fx, fy])
        if step is None:
            return None
        cand = psis[:1] + [psis[j] - step[j - 1] for j in range(1, m)]
        if not all(cand[j] < cand[j + 1] for j in range(m - 1)):
            return None
        psis = cand
    return None


def _least_norm_step(rows, rhs):
    """Least-norm solution of the underdetermined 2 x k system rows*x = rhs
    via the normal equations of J J^T."""
    a11 = sum(v * v for v in rows[0])
    a12 = sum(u * v for u, v in zip(rows[0], rows[1]))
    a22 = sum(v * v for v in rows[1])
    det = a11 * a22 - a12 * a12
    if abs(det) < 1e-18:
        # rank-deficient: fall back to gradient direction
        g = [rows[0][j] * rhs[0] + rows[1][j] * rhs[1] for j in range(len(rows[0]))]
        gn = sum(v * v for v in g)
        if gn < 1e-18:
            return None
        scale = (rhs[0] * rhs[0] + rhs[1] * rhs[1]) / gn
        return [scale * v for v in g]
    lam0 = (a22 * rhs[0] - a12 * rhs[1]) / det
    lam1 = (-a12 * rhs[0] + a11 * rhs[1]) / det
    return [rows[0][j] * lam0 + rows[1][j] * lam1 for j in range(len(rows[0]))]
