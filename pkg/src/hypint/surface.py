"""Pants graphs, Fenchel-Nielsen coordinates, and the holonomy representation.

A marked hyperbolic structure is assembled pants-by-pants: each pair of pants
gets a standard two-generator representation built from its seam lengths, each
boundary slot gets a frame (axis oriented with the pants on the left, marker at
the foot of the seam to the next slot), and pants are glued along edges by
sliding the markers apart by the twist distance and flipping sides. Zero twist
means aligned markers.

The word alphabet exposed to the curve machinery is one cuff loop per edge
plus one stable letter per non-tree edge; cuff loops of a pants generate its
local group, so the alphabet generates the full surface group.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, NotHyperbolic, ValidationFailed
from .hyptrig import perp_distinct_cosh, trace_to_length
from .moebius import Axis, Isometry, _normalize_point, axis_of

EndPoint = Tuple[int, int]  # (pants index, slot index)


def _perp_from_cosh(ch: float, chm1: float) -> Isometry:
    """Translation along the unit semicircle by the distance with cosh = ch."""
    c = math.sqrt(0.5 * (ch + 1.0))
    s = math.sqrt(0.5 * chm1)
    return Isometry.raw(np.array([[c, s], [s, c]]))


@dataclass(frozen=True)
class PantsGraph:
    """Trivalent gluing graph: 2g-2 pants, 3g-3 edges pairing slots."""

    num_pants: int
    edges: Tuple[Tuple[EndPoint, EndPoint], ...]

    def __post_init__(self):
        used = set()
        for (a, b) in self.edges:
            for (v, s) in (a, b):
                if not (0 <= v < self.num_pants and 0 <= s < 3):
                    raise DomainError(f"endpoint {(v, s)} out of range")
                if (v, s) in used:
                    raise DomainError(f"slot {(v, s)} used twice")
                used.add((v, s))
        if len(used) != 3 * self.num_pants:
            raise DomainError("every slot must be glued exactly once")
        if self.num_pants % 2 != 0:
            raise DomainError("pants count must be even")
        if len(self.edges) != 3 * self.num_pants // 2:
            raise DomainError("edge count must be 3/2 * pants count")
        if self.num_pants and not self._connected():
            raise DomainError("pants graph must be connected")

    def _connected(self) -> bool:
        adj = {v: set() for v in range(self.num_pants)}
        for ((v, _), (w, _)) in self.edges:
            adj[v].add(w)
            adj[w].add(v)
        seen, stack = {0}, [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.num_pants

    @property
    def genus(self) -> int:
        return self.num_pants // 2 + 1

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def slot_edge(self) -> Dict[EndPoint, int]:
        out = {}
        for e, (a, b) in enumerate(self.edges):
            out[a] = e
            out[b] = e
        return out

    def spanning_tree(self) -> List[int]:
        """Edge ids of a BFS spanning tree rooted at pants 0 (deterministic)."""
        placed = {0}
        tree = []
        changed = True
        while changed and len(placed) < self.num_pants:
            changed = False
            for e, ((v, _), (w, _)) in enumerate(self.edges):
                if (v in placed) != (w in placed):
                    tree.append(e)
                    placed.add(v)
                    placed.add(w)
                    changed = True
        return tree


@dataclass
class FNCoordinates:
    """Per-edge length and normalized twist; the marked surface's coordinates."""

    lengths: np.ndarray
    twists: np.ndarray

    def __post_init__(self):
        self.lengths = np.asarray(self.lengths, dtype=float).copy()
        self.twists = np.asarray(self.twists, dtype=float).copy()
        if self.lengths.shape != self.twists.shape:
            raise DomainError("lengths and twists must have equal shape")
        if not np.all(np.isfinite(self.lengths)) or np.any(self.lengths <= 0):
            raise DomainError("lengths must be positive and finite")
        if not np.all(np.isfinite(self.twists)):
            raise DomainError("twists must be finite")

    def copy(self) -> "FNCoordinates":
        return FNCoordinates(self.lengths.copy(), self.twists.copy())

    def folded_twists(self) -> np.ndarray:
        """Twists reduced mod 1 to [-1/2, 1/2)."""
        t = np.mod(self.twists + 0.5, 1.0) - 0.5
        return t

    def key(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.lengths).tobytes())
        h.update(np.ascontiguousarray(self.twists).tobytes())
        return h.hexdigest()[:16]


class LocalPants:
    """Standard-position representation of one pair of pants.

    Slot s carries: the cuff matrix ``cuff[s]`` translating by the cuff
    length with the pants interior on its left, and the frame ``frame[s]``
    taking the standard slot configuration (axis (0, inf) oriented upward,
    marker i) to the slot's axis and marker (the foot of the seam to the
    next slot).

    Frames are assembled from exact translation factors along the hexagon
    (seam feet of adjacent seams on a cuff are antipodal, at cuff-half-length
    spacing; the third axis sits at seam distance along the perpendicular
    through the second foot). Axis endpoints of pinched cuffs nearly collide
    on the boundary circle, so nothing here goes through endpoint
    coordinates.
    """

    def __init__(self, l0: float, l1: float, l2: float) -> None:
        self.lengths = (l0, l1, l2)
        ch01, chm01 = perp_distinct_cosh(l0, l1, l2)
        ch20, chm20 = perp_distinct_cosh(l2, l0, l1)
        sh01 = math.sqrt(chm01 * (ch01 + 1.0))
        u1 = 0.5 * l1
        A = Isometry.translation(l0)
        # B = P(h01) T(-l1) P(h01)^-1 written out entrywise: the trace is
        # 2 cosh(l1/2) symbolically, which matters when the cuff is pinched
        # and the matrix-product route would cancel 1e4-sized entries
        B = Isometry.raw(np.array([
            [math.cosh(u1) - ch01 * math.sinh(u1), sh01 * math.sinh(u1)],
            [-sh01 * math.sinh(u1), math.cosh(u1) + ch01 * math.sinh(u1)],
        ]))
        C = (B @ A).inverse()
        if abs(abs(C.trace()) - 2.0 * math.cosh(0.5 * l2)) > 1e-9 * math.cosh(0.5 * l2) + 1e-12 * ch01:
            raise ValidationFailed("pants relation trace mismatch")
        self.raw = [A, B, C]
        P = _perp_from_cosh(ch01, chm01)
        # axis-through-marker configurations, one exact factored word per slot
        configs = [
            Isometry.identity(),
            P @ Isometry.translation(-0.5 * l1),
            Isometry.translation(-0.5 * l0) @ _perp_from_cosh(ch20, chm20),
        ]
        z_ref = Isometry.perp_translation(0.5 * math.acosh(ch01)).apply(1j)  # on the 0-1 seam
        flip = Isometry.half_turn_flip()
        self.cuff: List[Isometry] = []
        self.frame: List[Isometry] = []
        for s, conf in enumerate(configs):
            # orient the slot axis with the pants interior on its left
            pulled = conf.inverse().apply(z_ref)
            frame = conf if pulled.real < 0 else conf @ flip
            d = (frame.inverse() @ self.raw[s] @ frame).m
            scale = float(np.abs(frame.m).max()) ** 2 * max(1.0, float(np.abs(self.raw[s].m).max()))
            if max(abs(d[0, 1]), abs(d[1, 0])) > 1e-8 + 2e3 * 2.2e-16 * scale:
                raise ValidationFailed(f"slot {s}: cuff axis misses its frame")
            self.cuff.append(self.raw[s] if abs(d[0, 0]) > abs(d[1, 1]) else self.raw[s].inverse())
            self.frame.append(frame)

    def oriented_axis(self, s: int) -> Axis:
        n = self.frame[s].m
        return Axis(
            _normalize_point(n @ np.array([0.0, 1.0])),
            _normalize_point(n @ np.array([1.0, 0.0])),
        )


def _letter_names(graph: PantsGraph, tree: Sequence[int]) -> List[str]:
    names = [f"x{e}" for e in range(graph.num_edges)]
    names += [f"g{e}" for e in range(graph.num_edges) if e not in tree]
    return names


class Holonomy:
    """Assembled representation with an explicit generating alphabet."""

    def __init__(self, graph: PantsGraph, fn: FNCoordinates) -> None:
        if len(fn.lengths) != graph.num_edges:
            raise DomainError("FN coordinate count does not match edge count")
        self.graph = graph
        self.fn = fn.copy()
        slot_edge = graph.slot_edge()
        self.pants: List[LocalPants] = [
            LocalPants(*(fn.lengths[slot_edge[(v, s)]] for s in range(3)))
            for v in range(graph.num_pants)
        ]
        self.tree = graph.spanning_tree()
        self._assemble()
        self._make_letters()
        self._validate_gate()

    # -- assembly ----------------------------------------------------------

    def _glue(self, e: int) -> Isometry:
        """Marker-to-marker gluing word T(twist distance) * flip for edge e."""
        d = self.fn.twists[e] * self.fn.lengths[e]
        return Isometry.translation(d) @ Isometry.half_turn_flip()

    def _assemble(self) -> None:
        g = self.graph
        F: List[Optional[Isometry]] = [None] * g.num_pants
        F[0] = Isometry.identity()
        # per-pants one-step factor to the parent: F[v] = F[parent] @ step[v]
        self._parent: List[Optional[int]] = [None] * g.num_pants
        self._step: List[Optional[Isometry]] = [None] * g.num_pants
        remaining = set(self.tree)
        while remaining:
            progressed = False
            for e in sorted(remaining):
                (v, s), (w, t) = g.edges[e]
                if F[v] is not None and F[w] is None:
                    step = self.pants[v].frame[s] @ self._glue(e) @ self.pants[w].frame[t].inverse()
                    F[w] = F[v] @ step
                    self._parent[w], self._step[w] = v, step
                elif F[w] is not None and F[v] is None:
                    step = self.pants[w].frame[t] @ self._glue(e) @ self.pants[v].frame[s].inverse()
                    F[v] = F[w] @ step
                    self._parent[v], self._step[v] = w, step
                else:
                    continue
                remaining.discard(e)
                progressed = True
                break
            if not progressed:
                raise ValidationFailed("spanning tree did not cover the graph")
        self.frames: List[Isometry] = F  # type: ignore[assignment]

    def _root_chain(self, v: int) -> List[int]:
        chain = [v]
        while self._parent[chain[-1]] is not None:
            chain.append(self._parent[chain[-1]])
        return chain[::-1]

    def _frame_ratio(self, a: int, b: int) -> np.ndarray:
        """frames[a]^-1 @ frames[b] as a product of tree-step factors.

        The common ancestor prefix cancels symbolically instead of forming
        the big global frames and undoing them; ratios between nearby pants
        keep small, relatively accurate entries.
        """
        ca, cb = self._root_chain(a), self._root_chain(b)
        p = 0
        while p < len(ca) and p < len(cb) and ca[p] == cb[p]:
            p += 1
        m = np.eye(2)
        for v in reversed(ca[p:]):  # climb from a to the common ancestor
            m = m @ self._step[v].inverse().m
        for v in cb[p:]:  # descend to b
            m = m @ self._step[v].m
        return m

    def _make_letters(self) -> None:
        g = self.graph
        self.letter_names = _letter_names(g, self.tree)
        # each letter = frames[home] @ local @ frames[home]^-1
        local: List[np.ndarray] = []
        homes: List[int] = []
        self.edge_letter: Dict[int, int] = {}
        self.stable_letter: Dict[int, int] = {}
        for e, ((v, s), _) in enumerate(g.edges):
            self.edge_letter[e] = len(local)
            local.append(self.pants[v].cuff[s].m)
            homes.append(v)
        for e, ((v, s), (w, t)) in enumerate(g.edges):
            if e in self.tree:
                continue
            self.stable_letter[e] = len(local)
            glue_step = (self.pants[v].frame[s] @ self._glue(e) @ self.pants[w].frame[t].inverse()).m
            local.append(glue_step @ self._frame_ratio(w, v))
            homes.append(v)
        self.letter_local = local
        self.letter_home = homes
        self._rooted: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
        self.letter_array, self.letter_array_inv, self.letter_floor = self._rooted_letters(0)
        self.letters = [Isometry.raw(m) for m in self.letter_array]

    def _rooted_letters(self, root: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Alphabet conjugated into the frame of `root`.

        Built from tree-step factors so letters near the root keep full
        precision. The third array is each letter's rounding scale (the
        largest intermediate magnitude of its conjugation): entries of a
        far-away letter can collapse to order one while carrying absolute
        noise at eps times this scale.
        """
        if root not in self._rooted:
            n = len(self.letter_local)
            arr = np.empty((n, 2, 2))
            arr_inv = np.empty((n, 2, 2))
            floors = np.empty(n)
            for i, (v, loc) in enumerate(zip(self.letter_home, self.letter_local)):
                if v == root:
                    m = loc
                    floors[i] = float(np.abs(loc).max())
                else:
                    r = self._frame_ratio(root, v)
                    r_inv = self._frame_ratio(v, root)
                    m = r @ loc @ r_inv
                    floors[i] = float(np.abs(r).max()) ** 2 * float(np.abs(loc).max())
                arr[i] = m
                arr_inv[i] = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
            self._rooted[root] = (arr, arr_inv, floors)
        return self._rooted[root]

    def _far_cuff_across(self, e: int) -> Tuple[np.ndarray, float]:
        """Cuff of edge e seen from the far side, carried across the gluing.

        One gluing step in the near pants' local coordinates: for a correct
        assembly this inverts the near cuff matrix, whatever the spanning tree
        did elsewhere. Also returns the rounding scale of the conjugation (the
        squared magnitude of the step factors), which bounds the backward
        error of the result.
        """
        (v, s), (w, t) = self.graph.edges[e]
        step = (self.pants[v].frame[s] @ self._glue(e) @ self.pants[w].frame[t].inverse()).m
        step_inv = np.array([[step[1, 1], -step[0, 1]], [-step[1, 0], step[0, 0]]])
        cuff = self.pants[w].cuff[t].m
        far = step @ cuff @ step_inv
        # conjugation cancels entries: intermediates bound the rounding
        scale = float(np.abs(step).max()) ** 2 * max(1.0, float(np.abs(cuff).max()))
        return far, scale

    @staticmethod
    def _near_identity_defect(prod: np.ndarray) -> float:
        return float(min(np.abs(prod - np.eye(2)).max(), np.abs(prod + np.eye(2)).max()))

    def _edge_trace_defect(self, e: int) -> Tuple[float, float]:
        """(trace deviation of the far-side cuff, tolerance at its conditioning)."""
        want = self.fn.lengths[e]
        far, scale = self._far_cuff_across(e)
        got_tr = abs(float(far[0, 0] + far[1, 1]))
        want_tr = 2.0 * math.cosh(0.5 * want)
        # 1e-8 relative in length, converted to trace units, plus rounding floor
        tol = 1e-8 * max(1.0, want) * math.sinh(0.5 * want) + 2000.0 * 2.2e-16 * scale
        return abs(got_tr - want_tr), tol

    def _validate_gate(self) -> None:
        # the per-slot frame asserts in LocalPants plus the exact gluing
        # algebra carry the correctness burden; these cross-checks apply
        # wherever double precision can resolve them
        for e, ((v, s), _) in enumerate(self.graph.edges):
            dev, tol = self._edge_trace_defect(e)
            if tol < 0.1 and dev > tol:
                raise ValidationFailed(f"edge {e}: far-side cuff trace off by {dev}")
            far, scale = self._far_cuff_across(e)
            cuff = self.pants[v].cuff[s].m
            prod = cuff @ far
            # rounding in `far` is amplified by the cuff magnitude in the product
            ptol = 1e-8 + 2000.0 * 2.2e-16 * scale * max(1.0, float(np.abs(cuff).max()))
            if ptol < 0.1 and self._near_identity_defect(prod) > ptol:
                raise ValidationFailed(f"edge {e}: gluing does not invert the cuff")

    # -- words -------------------------------------------------------------

    def num_letters(self) -> int:
        return len(self.letters)

    def letter_matrix(self, signed: int) -> np.ndarray:
        if signed > 0:
            return self.letter_array[signed - 1]
        return self.letter_array_inv[-signed - 1]

    def evaluate(self, word: Sequence[int]) -> Isometry:
        """Matrix of a word given as signed 1-based letter indices."""
        m = np.eye(2)
        for c in word:
            m = m @ self.letter_matrix(c)
        return Isometry.raw(m)

    def word_trace(self, word: Sequence[int]) -> float:
        """Trace of the word, evaluated rooted at its home pants.

        The trace is conjugation invariant; multiplying the conjugated
        letters (rather than conjugating the final product) keeps the
        intermediate entries small for curves localized away from the
        base pants, which matters on pinched surfaces.
        """
        if len(word) == 0:
            raise DomainError("empty word")
        root = self.letter_home[abs(word[0]) - 1]
        arr, arr_inv, _ = self._rooted_letters(root)
        m = arr[word[0] - 1] if word[0] > 0 else arr_inv[-word[0] - 1]
        for c in word[1:]:
            m = m @ (arr[c - 1] if c > 0 else arr_inv[-c - 1])
        return float(m[0, 0] + m[1, 1])

    def word_length(self, word: Sequence[int]) -> float:
        """Geodesic length of the word's free-homotopy class."""
        return trace_to_length(self.word_trace(word))

    def edge_word(self, e: int) -> Tuple[int, ...]:
        return (self.edge_letter[e] + 1,)

    def dual_word(self, e: int) -> Tuple[int, ...]:
        if e not in self.stable_letter:
            raise DomainError(f"edge {e} is a tree edge; it has no stable letter")
        return (self.stable_letter[e] + 1,)

    def cuff_axis(self, e: int) -> Axis:
        return axis_of(self.letters[self.edge_letter[e]])

    def surface_key(self) -> str:
        h = hashlib.sha256()
        h.update(repr(self.graph.edges).encode())
        h.update(self.fn.key().encode())
        return h.hexdigest()[:16]

    # -- validation report ---------------------------------------------------

    def validate(self, word_depth: int = 4) -> List[str]:
        """Consistency report; empty list means no defect found."""
        defects: List[str] = []
        for i, m in enumerate(self.letters):
            det = float(np.linalg.det(m.m))
            scale = float(np.abs(m.m).max())
            floor = 2000.0 * 2.2e-16 * scale * scale
            # at large entry scale the det carries no information in doubles
            if floor < 1e-6 and abs(det - 1.0) > 1e-9 + floor:
                defects.append(f"letter {self.letter_names[i]}: det {det}")
        for e in range(self.graph.num_edges):
            dev, tol = self._edge_trace_defect(e)
            if tol < 0.1 and dev > tol:
                defects.append(f"edge {e}: far-side cuff trace off by {dev} (tol {tol})")
            # the exposed global letter must carry the same trace
            letter = self.letter_array[self.edge_letter[e]]
            lscale = float(np.abs(letter).max())
            tr = abs(float(letter[0, 0] + letter[1, 1]))
            want_tr = 2.0 * math.cosh(0.5 * self.fn.lengths[e])
            ltol = 1e-8 + 1000.0 * 2.2e-16 * max(1.0, lscale)
            if ltol < 0.1 and abs(tr - want_tr) > ltol:
                defects.append(f"edge {e}: letter trace {tr} vs expected {want_tr}")
        defects += self._check_edge_identifications()
        defects += self._check_short_words(word_depth)
        return defects

    def _check_edge_identifications(self) -> List[str]:
        defects = []
        for e, ((v, s), (w, t)) in enumerate(self.graph.edges):
            # work rooted at pants v, composing tree-step ratios so the
            # common frame prefix cancels symbolically
            fw = self._frame_ratio(v, w)
            fw_inv = self._frame_ratio(w, v)
            xa = self.pants[v].cuff[s].m
            xb = fw @ self.pants[w].cuff[t].m @ fw_inv
            ratio_scale = float(np.abs(fw).max()) ** 2
            if e in self.tree:
                prod = xa @ xb
                scale = float(np.abs(xa).max()) * max(float(np.abs(xb).max()), ratio_scale)
            else:
                arr, _, _ = self._rooted_letters(v)
                ge = arr[self.stable_letter[e]]
                ge_inv = np.array([[ge[1, 1], -ge[0, 1]], [-ge[1, 0], ge[0, 0]]])
                prod = xa @ ge @ xb @ ge_inv
                scale = (
                    float(np.abs(xa).max())
                    * max(float(np.abs(xb).max()), ratio_scale)
                    * float(np.abs(ge).max()) ** 2
                )
            tol = 1e-8 + 2000.0 * 2.2e-16 * scale
            defect = self._near_identity_defect(prod)
            if tol < 0.1 and defect > tol:
                defects.append(f"edge {e}: two-sided cuff identification broken")
        return defects

    def _check_short_words(self, depth: int) -> List[str]:
        """Flag short words with resolvably non-hyperbolic, non-relator images."""
        defects = []
        n = self.num_letters()
        alphabet = [i for i in range(-n, n + 1) if i != 0]
        # the 2 + 1e-6 parabolic band is a defect only when no genuine curve
        # can live there, i.e. when even the shortest cuff's trace clears it
        band_applies = 2.0 * math.cosh(0.5 * float(self.fn.lengths.min())) > 2.0 + 2e-6
        for first in alphabet:
            root = self.letter_home[abs(first) - 1]
            arr, arr_inv, floors = self._rooted_letters(root)

            def mat(c):
                return arr[c - 1] if c > 0 else arr_inv[-c - 1]

            m0 = mat(first)
            frontier = [((first,), m0, floors[abs(first) - 1])]
            for _ in range(depth - 1):
                nxt = []
                for word, m, runscale in frontier:
                    for c in alphabet:
                        if c == -word[-1]:
                            continue
                        w2 = word + (c,)
                        m2 = m @ mat(c)
                        # rounding floor from the intermediate magnitudes and
                        # each letter's own construction scale: the product's
                        # entries may already be cancelled noise
                        scale2 = max(
                            runscale,
                            floors[abs(c) - 1],
                            float(np.abs(m).max()) * float(np.abs(mat(c)).max()),
                            float(np.abs(m2).max()),
                        )
                        nxt.append((w2, m2, scale2))
                        floor = 2000.0 * 2.2e-16 * max(1.0, scale2)
                        near_id = self._near_identity_defect(m2)
                        tr = abs(float(m2[0, 0] + m2[1, 1]))
                        threshold = (2.0 + 1e-6 if band_applies else 2.0 - 1e-6 - floor)
                        if floor < 1e-7 and near_id > 1e-6 + floor and tr <= threshold:
                            defects.append(f"word {w2}: non-hyperbolic image, |tr|={tr}")
                frontier = nxt
        return defects


def build_holonomy(graph: PantsGraph, fn: FNCoordinates) -> Holonomy:
    return Holonomy(graph, fn)
