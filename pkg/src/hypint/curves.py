"""Curve combinatorics: enumeration, homology, and intersection counting.

Geodesic lengths are read from the holonomy of the surface under study, while
everything topological (signed and geometric crossing counts, simplicity,
homology classes) is computed on a fat reference surface carrying the same
marking: the same pants graph with all lengths 2, where word balls stay small.

Crossings are counted by translating the second curve's axis around a ball of
group elements and collecting crossings with one fundamental period of the
first curve's axis; the ball radius needed for completeness is
len(u)/2 + len(v)/2 + dist(base, axis_u) + dist(base, axis_v).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BallTooSmall,
    BudgetExceeded,
    DegenerateBasis,
    NotHyperbolic,
    NumericallyAmbiguous,
    SharedGeodesic,
)
from .hyptrig import trace_to_length
from .moebius import Axis, _det2, _normalize_point, axis_of, point_parameter
from .surface import FNCoordinates, Holonomy, PantsGraph, build_holonomy
from .words import Word, canonical, is_proper_power, primitive_root

BASEPOINT = 1j
DET_TOL = 1e-9


# ---------------------------------------------------------------------------
# element balls


class ElementBall:
    """Group elements with displacement of the basepoint at most `radius`.

    Stored sorted by displacement so queries can slice the prefix they need.
    """

    def __init__(self, matrices: np.ndarray, radius: float) -> None:
        disp = _displacements(matrices)
        order = np.argsort(disp, kind="stable")
        self.matrices = np.ascontiguousarray(matrices[order])
        self.displacements = disp[order]
        self.radius = radius

    def upto(self, radius: float) -> np.ndarray:
        if radius >= self.radius:
            return self.matrices
        k = int(np.searchsorted(self.displacements, radius, side="right"))
        return self.matrices[:k]

    def __len__(self) -> int:
        return len(self.matrices)


def _displacements(mats: np.ndarray) -> np.ndarray:
    # cosh d(i, m i) = ||m||_F^2 / 2 for det-1 matrices
    q = 0.5 * np.einsum("nij,nij->n", mats, mats)
    return np.arccosh(np.maximum(q, 1.0))


def _canonical_keys(mats: np.ndarray, quantum: float = 1e-6) -> np.ndarray:
    flat = mats.reshape(len(mats), 4)
    idx = np.abs(flat).argmax(axis=1)
    lead = flat[np.arange(len(flat)), idx]
    flat = flat * np.where(lead < 0, -1.0, 1.0)[:, None]
    return np.round(flat / quantum).astype(np.int64)


def build_ball(h: Holonomy, radius: float, node_limit: int = 2_000_000,
               slack: float = 3.0) -> ElementBall:
    """BFS ball of group elements with displacement <= radius.

    Expansion continues through elements up to radius + slack so that short
    elements reachable only through slightly longer prefixes are found; the
    guarantee is empirical, which the homology-consistency suite exercises.
    """
    letters = np.concatenate([h.letter_array, h.letter_array_inv])
    seen: Dict[bytes, None] = {}
    keep = [np.eye(2)[None]]
    frontier = np.eye(2)[None]
    seen[_canonical_keys(frontier)[0].tobytes()] = None
    total = 1
    cosh_keep = math.cosh(radius)
    cosh_extend = math.cosh(radius + slack)
    while len(frontier):
        prod = np.einsum("nij,ljk->nlik", frontier, letters).reshape(-1, 2, 2)
        q = 0.5 * np.einsum("nij,nij->n", prod, prod)
        prod = prod[q <= cosh_extend]
        if not len(prod):
            break
        keys = _canonical_keys(prod)
        # dedup within the batch, deterministically keeping the first
        _, first = np.unique(keys, axis=0, return_index=True)
        order = np.sort(first)
        prod, keys = prod[order], keys[order]
        fresh = []
        for i, k in enumerate(keys):
            kb = k.tobytes()
            if kb not in seen:
                seen[kb] = None
                fresh.append(i)
        if not fresh:
            break
        frontier = prod[fresh]
        total += len(fresh)
        if total > node_limit:
            raise BallTooSmall(
                f"element ball exceeded {node_limit} nodes at radius {radius}"
            )
        q = 0.5 * np.einsum("nij,nij->n", frontier, frontier)
        keep.append(frontier[q <= cosh_keep])
    mats = np.concatenate(keep)
    return ElementBall(mats, radius)


# ---------------------------------------------------------------------------
# axis crossing engine


def _axis_data(h: Holonomy, word: Word):
    iso = h.evaluate(word)
    tr = iso.trace()
    ax = axis_of(iso)
    return ax, trace_to_length(tr)


def dist_to_axis(ax: Axis, z: complex) -> float:
    m = np.array([[ax.start[1], -ax.start[0]], [ax.end[1], -ax.end[0]]])
    w = (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])
    return math.asinh(abs(w.real) / abs(w.imag))


@dataclass(frozen=True)
class CrossingRecord:
    param: float
    sign: int


def _same_unoriented(a: Axis, b: Axis, tol: float = DET_TOL) -> bool:
    same = abs(_det2(a.start, b.start)) < tol and abs(_det2(a.end, b.end)) < tol
    opp = abs(_det2(a.start, b.end)) < tol and abs(_det2(a.end, b.start)) < tol
    return same or opp


def translated_axes(mats: np.ndarray, ax_v: Axis) -> Tuple[np.ndarray, np.ndarray]:
    """Deduplicated translates of an axis under a set of group elements."""
    vr = mats @ ax_v.start
    va = mats @ ax_v.end
    # normalize rows with deterministic signs
    for arr in (vr, va):
        n = np.hypot(arr[:, 0], arr[:, 1])
        arr /= n[:, None]
        big0 = np.abs(arr[:, 0]) >= np.abs(arr[:, 1])
        lead = np.where(big0, arr[:, 0], arr[:, 1])
        arr *= np.where(lead < 0, -1.0, 1.0)[:, None]
    # dedup (g and g v^k move the axis identically)
    keys = np.round(np.concatenate([vr, va], axis=1) / 1e-7).astype(np.int64)
    _, first = np.unique(keys, axis=0, return_index=True)
    sel = np.sort(first)
    return vr[sel], va[sel]


def signed_crossings(h: Holonomy, ball: ElementBall, u: Word, v: Word,
                     margin: float = 1.0, tol: float = DET_TOL) -> List[CrossingRecord]:
    """Crossings of v's geodesic with one period of u's geodesic, with signs.

    One record per intersection point of the two closed geodesics; the sum of
    signs is the homological pairing, the count is the geometric intersection
    number when both curves are simple.
    """
    ax_u, lu = _axis_data(h, u)
    root_v, kv = primitive_root(v)
    ax_v, lv = _axis_data(h, root_v)
    if _same_unoriented(ax_u, ax_v):
        raise SharedGeodesic("the two words run along one geodesic")
    needed = 0.5 * lu + 0.5 * lv + dist_to_axis(ax_u, BASEPOINT) + dist_to_axis(
        ax_v, BASEPOINT) + margin
    if needed > ball.radius + 1e-9:
        raise BallTooSmall(f"needed radius {needed:.2f} > ball radius {ball.radius:.2f}")
    axes = translated_axes(ball.upto(needed), ax_v)
    records = _window_crossings(axes, ax_u, lu, tol)
    if kv > 1:
        # v traverses its geodesic kv times: every point recurs that often
        records = [r for r in records for _ in range(kv)]
    return records


def _window_crossings(axes: Tuple[np.ndarray, np.ndarray], ax_u: Axis, lu: float,
                      tol: float) -> List[CrossingRecord]:
    vr, va = axes
    ur, ua = ax_u.start, ax_u.end
    d_rr = ur[0] * vr[:, 1] - ur[1] * vr[:, 0]
    d_ra = ur[0] * va[:, 1] - ur[1] * va[:, 0]
    d_ar = ua[0] * vr[:, 1] - ua[1] * vr[:, 0]
    d_aa = ua[0] * va[:, 1] - ua[1] * va[:, 0]
    shared = (np.abs(d_rr) < tol) & (np.abs(d_aa) < tol)
    shared |= (np.abs(d_ra) < tol) & (np.abs(d_ar) < tol)
    active = ~shared
    small = np.abs(np.stack([d_rr, d_ra, d_ar, d_aa])).min(axis=0)
    if np.any(active & (small < tol)):
        raise NumericallyAmbiguous("axis endpoint separation below tolerance")
    cross = active & ((d_rr * d_aa) * (d_ra * d_ar) < 0.0)
    if not np.any(cross):
        return []
    handed = math.copysign(1.0, _det2(ur, ua))
    signs = -(handed * np.sign(d_rr[cross]) * np.sign(d_ar[cross])).astype(int)
    # chart coordinates of v-endpoints: x(p) = D(p, ur) / D(p, ua)
    x_r = (vr[cross, 0] * ur[1] - vr[cross, 1] * ur[0]) / (
        vr[cross, 0] * ua[1] - vr[cross, 1] * ua[0])
    x_a = (va[cross, 0] * ur[1] - va[cross, 1] * ur[0]) / (
        va[cross, 0] * ua[1] - va[cross, 1] * ua[0])
    t = 0.5 * np.log(-x_r * x_a)
    t_center = point_parameter(ax_u, BASEPOINT)
    lo, hi = t_center - 0.5 * lu, t_center + 0.5 * lu
    if np.any((np.abs(t - lo) < 1e-9) | (np.abs(t - hi) < 1e-9)):
        raise NumericallyAmbiguous("crossing parameter at the period boundary")
    in_window = (t >= lo) & (t < hi)
    t, signs = t[in_window], signs[in_window]
    ends = np.concatenate([vr[cross][in_window], va[cross][in_window]], axis=1)
    keys = np.round(np.concatenate([t[:, None], ends], axis=1) / 1e-6).astype(np.int64)
    _, first = np.unique(keys, axis=0, return_index=True)
    sel = np.sort(first)
    order = np.argsort(t[sel], kind="stable")
    return [CrossingRecord(float(tt), int(ss))
            for tt, ss in zip(t[sel][order], signs[sel][order])]


def geometric_int_signed(h: Holonomy, ball: ElementBall, u: Word, v: Word,
                         **kw) -> List[CrossingRecord]:
    return signed_crossings(h, ball, u, v, **kw)


def self_int_count(h: Holonomy, ball: ElementBall, w: Word, margin: float = 1.0) -> int:
    """Transverse double points of the closed geodesic of w; 0 iff simple."""
    if is_proper_power(w):
        # k-fold covered geodesic: count for a transverse perturbation of the
        # k strands (never simple)
        root, k = primitive_root(w)
        base = self_int_count(h, ball, root, margin)
        return base * k * k + (k - 1)
    ax, lu = _axis_data(h, w)
    needed = lu + 2.0 * dist_to_axis(ax, BASEPOINT) + margin
    if needed > ball.radius + 1e-9:
        raise BallTooSmall(f"needed radius {needed:.2f} > ball radius {ball.radius:.2f}")
    axes = translated_axes(ball.upto(needed), ax)
    records = _window_crossings(axes, ax, lu, DET_TOL)
    if len(records) % 2:
        raise NumericallyAmbiguous("odd self-crossing count; perturb twists")
    return len(records) // 2


# ---------------------------------------------------------------------------
# homology via the reference pairing


def _hnf_with_transform(rows: List[List[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Row echelon form over the integers with the unimodular transform."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    h = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        while True:
            pivots = [i for i in range(r, m) if h[i][c] != 0]
            if not pivots:
                break
            i0 = min(pivots, key=lambda i: abs(h[i][c]))
            h[r], h[i0] = h[i0], h[r]
            u[r], u[i0] = u[i0], u[r]
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            finished = True
            for i in range(r + 1, m):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                if h[i][c]:
                    finished = False
            if finished:
                break
        if r < m and h[r][c] != 0:
            r += 1
            if r == m:
                break
    return h[:r], u[:r]


def _int_det(mat: List[List[int]]) -> int:
    """Bareiss fraction-free determinant of a small integer matrix."""
    a = [list(r) for r in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


class Homology:
    """First-homology coordinates and pairing from the reference marking."""

    def __init__(self, h_ref: Holonomy, ball: ElementBall) -> None:
        n = h_ref.num_letters()
        omega = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                try:
                    recs = signed_crossings(h_ref, ball, (i + 1,), (j + 1,))
                    val = sum(r.sign for r in recs)
                except SharedGeodesic:
                    val = 0
                omega[i][j] = val
                omega[j][i] = -val
        self.omega = omega
        self.num_letters = n
        rows = [list(r) for r in omega]  # row i = pairing functional of letter i
        hnf, transform = _hnf_with_transform(rows)
        self.rank = len(hnf)
        expected = 2 * h_ref.graph.genus
        if self.rank != expected:
            raise DegenerateBasis(f"homology rank {self.rank} != {expected}")
        self.hnf = hnf
        self.basis_reps = transform  # exponent combinations of letters
        self.pivots = [next(c for c, x in enumerate(row) if x != 0) for row in hnf]
        p = [[self._pair_exp(a, b) for b in transform] for a in transform]
        if abs(_int_det(p)) != 1:
            raise DegenerateBasis("pairing matrix of the basis is not unimodular")
        self.pairing = p

    def _pair_exp(self, ea: Sequence[int], eb: Sequence[int]) -> int:
        return sum(
            ea[i] * self.omega[i][j] * eb[j]
            for i in range(self.num_letters)
            for j in range(self.num_letters)
            if ea[i] and self.omega[i][j] and eb[j]
        )

    def exponent_vector(self, word: Word) -> List[int]:
        e = [0] * self.num_letters
        for c in word:
            e[abs(c) - 1] += 1 if c > 0 else -1
        return e

    def lam(self, word: Word) -> Tuple[int, ...]:
        """Pairing functional of the word against every letter."""
        e = self.exponent_vector(word)
        return tuple(
            sum(e[i] * self.omega[i][j] for i in range(self.num_letters))
            for j in range(self.num_letters)
        )

    def coords(self, word: Word) -> Tuple[int, ...]:
        """Coordinates of the homology class in the unimodular basis."""
        target = list(self.lam(word))
        out = [0] * self.rank
        for i in range(self.rank):
            c = self.pivots[i]
            q, r = divmod(target[c], self.hnf[i][c])
            if r:
                raise DegenerateBasis("class outside the letter lattice")
            out[i] = q
            if q:
                target = [a - q * b for a, b in zip(target, self.hnf[i])]
        if any(target):
            raise DegenerateBasis("pairing functional outside the lattice")
        return tuple(out)

    def pairing_of_coords(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(
            a[i] * self.pairing[i][j] * b[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def pairing_of_words(self, w1: Word, w2: Word) -> int:
        e1 = self.exponent_vector(w1)
        e2 = self.exponent_vector(w2)
        return self._pair_exp(e1, e2)

    def is_trivial(self, word: Word) -> bool:
        return not any(self.lam(word))


def abelianize(hom: Homology, w: Word) -> Tuple[int, ...]:
    return hom.coords(w)


def pairing_matrix(hom: Homology) -> np.ndarray:
    return np.array(hom.pairing, dtype=int)


def algebraic_int(a: Sequence[int], b: Sequence[int], p: np.ndarray) -> int:
    return int(np.asarray(a) @ p @ np.asarray(b))


def is_nonseparating(hom: Homology, w: Word) -> bool:
    return not hom.is_trivial(w)


# ---------------------------------------------------------------------------
# the fat reference marking and its topology oracle


REFERENCE_LENGTH = 2.0


@dataclass
class TopologyInfo:
    ref_length: float
    cuff_cross: Tuple[int, ...]  # geometric crossings with each pants curve
    cuff_int: Tuple[int, ...]  # signed sums against each pants curve
    self_int: Optional[int]  # None when out of the scan radius budget


class Marking:
    """Reference surface for one pants graph: topology of marked classes.

    All quantities here are invariants of the marked class, so computing
    them at reference lengths is valid for any FN coordinates on the graph.
    A small deterministic twist jitter keeps crossings away from degenerate
    configurations.
    """

    def __init__(self, graph: PantsGraph, ball_radius: float = 12.5,
                 max_scan_radius: float = 14.5, node_limit: int = 2_000_000) -> None:
        self.graph = graph
        e = graph.num_edges
        twists = np.array([1e-4 * (k + 1) for k in range(e)])
        self.h = build_holonomy(
            graph, FNCoordinates(np.full(e, REFERENCE_LENGTH), twists))
        self.max_scan_radius = max_scan_radius
        self.node_limit = node_limit
        self._ball: Optional[ElementBall] = None
        self._ball_radius = ball_radius
        self.homology = Homology(self.h, self.ball(ball_radius))
        self._topo: Dict[Word, TopologyInfo] = {}
        self._conj: Dict[Tuple[Word, Word], bool] = {}
        self._cuff_axes: Dict[int, Tuple] = {}

    def ball(self, radius: float) -> ElementBall:
        radius = min(max(radius, self._ball_radius), self.max_scan_radius)
        if self._ball is None or self._ball.radius < radius - 1e-9:
            self._ball = build_ball(self.h, radius, node_limit=self.node_limit)
            self._ball_radius = self._ball.radius
        return self._ball

    def ref_length(self, w: Word) -> float:
        return self.h.word_length(w)

    def _cuff_translates(self, e: int) -> Tuple:
        """Translated cuff-axis set of edge e under the full ball, with the
        axis data needed for completeness checks (length and base distance)."""
        if e not in self._cuff_axes:
            ax = axis_of(self.h.letters[self.edge_letter_index(e)])
            axes = translated_axes(self.ball(self._ball_radius).matrices, ax)
            self._cuff_axes[e] = (axes, ax, self.fn_length(e), dist_to_axis(ax, BASEPOINT))
        return self._cuff_axes[e]

    def edge_letter_index(self, e: int) -> int:
        return self.h.edge_letter[e]

    def fn_length(self, e: int) -> float:
        return float(self.h.fn.lengths[e])

    def topology(self, w: Word, want_self: bool = True) -> TopologyInfo:
        w = canonical(w)
        cached = self._topo.get(w)
        if cached is not None and (cached.self_int is not None or not want_self):
            return cached
        lref = self.ref_length(w)
        ax = axis_of(self.h.evaluate(w))
        d0 = dist_to_axis(ax, BASEPOINT)
        cross: List[int] = []
        sint: List[int] = []
        for e in range(self.graph.num_edges):
            axes, ax_e, le, de = self._cuff_translates(e)
            if _same_unoriented(ax, ax_e):
                cross.append(0)
                sint.append(0)
                continue
            needed = 0.5 * lref + 0.5 * le + d0 + de + 1.0
            if needed > self.ball(needed).radius + 1e-9:
                raise BallTooSmall(f"cuff scan for a curve of reference length {lref}")
            recs = _window_crossings(axes, ax, lref, DET_TOL)
            cross.append(len(recs))
            sint.append(sum(r.sign for r in recs))
        self_i: Optional[int] = None
        if want_self:
            needed = lref + 2.0 * d0 + 1.0
            if needed <= self.max_scan_radius:
                self_i = self_int_count(self.h, self.ball(needed), w)
        info = TopologyInfo(lref, tuple(cross), tuple(sint), self_i)
        self._topo[w] = info
        return info

    def conjugate_classes(self, w1: Word, w2: Word) -> bool:
        """Ball-verified test that two words lie in one oriented class."""
        key = (canonical(w1), canonical(w2))
        if key[0] == key[1]:
            return True
        if key in self._conj:
            return self._conj[key]
        a = self.h.evaluate(key[0]).m
        b = self.h.evaluate(key[1]).m
        mats = self.ball(self._ball_radius).matrices
        left = np.einsum("nij,jk->nik", mats, a)
        right = np.einsum("ij,njk->nik", b, mats)
        scale = max(1.0, float(np.abs(a).max()), float(np.abs(b).max()))
        close = np.abs(left - right).max(axis=(1, 2)) < 1e-6 * scale
        close |= np.abs(left + right).max(axis=(1, 2)) < 1e-6 * scale
        out = bool(np.any(close))
        self._conj[key] = out
        return out


# ---------------------------------------------------------------------------
# class enumeration


@dataclass
class EnumerationConfig:
    max_word_len: int = 6
    node_limit: int = 400_000
    prune_slack: float = 4.0
    length_round: int = 7


@dataclass
class ClassEntry:
    word: Word
    length: float
    coords: Tuple[int, ...]
    nonseparating: bool
    primitive: bool
    topo: Optional[TopologyInfo] = None

    @property
    def simple(self) -> Optional[bool]:
        if not self.primitive:
            return False
        if self.topo is None or self.topo.self_int is None:
            return None
        return self.topo.self_int == 0


@dataclass
class CurveTable:
    entries: List[ClassEntry]
    cutoff: float
    certified: bool
    surface_key: str

    def simple_entries(self) -> List[ClassEntry]:
        return [e for e in self.entries if e.simple]

    def __len__(self) -> int:
        return len(self.entries)


def word_budget(h: Holonomy, cutoff: float) -> int:
    """Crude word-length budget: cutoff over the shortest letter length."""
    t_min = min(h.fn.lengths)
    return int(math.ceil(cutoff / max(t_min, 1e-12)))


def enumerate_classes(h: Holonomy, marking: Marking, cutoff: float,
                      config: EnumerationConfig = EnumerationConfig(),
                      topology: bool = True) -> CurveTable:
    """Deduplicated oriented conjugacy classes with geodesic length <= cutoff.

    Both orientations appear as separate entries. Certification is the crude
    word-budget criterion; tables on pinched surfaces are typically
    uncertified and honestly flagged so.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    n = h.num_letters()
    alphabet = [i for i in range(-n, n + 1) if i != 0]
    cosh_prune = math.cosh(cutoff + config.prune_slack)
    found: Dict[Word, float] = {}
    frontier: List[Tuple[Word, np.ndarray]] = [((), np.eye(2))]
    nodes = 0
    for _ in range(config.max_word_len):
        nxt: List[Tuple[Word, np.ndarray]] = []
        for word, m in frontier:
            for c in alphabet:
                if word and c == -word[-1]:
                    continue
                m2 = m @ h.letter_matrix(c)
                nodes += 1
                if nodes > config.node_limit:
                    raise BudgetExceeded(f"enumeration exceeded {config.node_limit} nodes")
                if 0.5 * float(np.einsum("ij,ij->", m2, m2)) > cosh_prune:
                    continue
                w2 = word + (c,)
                nxt.append((w2, m2))
                cw = canonical(w2)
                if cw in found or len(cw) == 0:
                    continue
                try:
                    l = h.word_length(cw)
                except NotHyperbolic:
                    continue
                if l <= cutoff:
                    found[cw] = l
        frontier = nxt
    entries = _dedup_classes(found, marking, config)
    if topology:
        for entry in entries:
            if entry.primitive:
                try:
                    entry.topo = marking.topology(entry.word)
                except BallTooSmall:
                    entry.topo = None  # flagged unknown, excluded from simple sets
    certified = config.max_word_len >= word_budget(h, cutoff)
    return CurveTable(entries, cutoff, certified, h.surface_key())


def _dedup_classes(found: Dict[Word, float], marking: Marking,
                   config: EnumerationConfig) -> List[ClassEntry]:
    buckets: Dict[Tuple, List[Tuple[Word, float]]] = {}
    for w in sorted(found, key=lambda w: (len(w), w)):  # prefer short spellings
        lam = marking.homology.lam(w)
        key = (round(found[w], config.length_round), lam)
        buckets.setdefault(key, []).append((w, found[w]))
    entries: List[ClassEntry] = []
    for key in sorted(buckets):
        kept: List[Word] = []
        for w, l in buckets[key]:
            if any(marking.conjugate_classes(w, prev) for prev in kept):
                continue
            kept.append(w)
            entries.append(ClassEntry(
                word=w,
                length=l,
                coords=marking.homology.coords(w),
                nonseparating=not marking.homology.is_trivial(w),
                primitive=not is_proper_power(w),
            ))
    entries.sort(key=lambda e: (e.length, e.word))
    return entries
