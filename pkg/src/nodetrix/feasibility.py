"""Arrangement analysis for a pair of disjoint squares.

A pair of disjoint axis-aligned squares is mapped by a signed axis
permutation onto the canonical configuration "A strictly left of B, top of
A at least as high as top of B". In that frame three arrangements are
possible, and they decide which side pairs admit an xy-monotone edge, which
drawings sweep between opposite sides in an S shape, and which at-most-two
candidates survive for each edge in the two cases of the pair analysis.

Side letters returned by the table functions are canonical-frame letters:
the first letter is the side at the left square (role a), the second at the
right square (role b). Callers translate them to world sides through the
frame. All comparison inputs (y_u, y_v, rectangle bounds) must already be
canonical-frame values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .model import SIDE_ORDER, Side, Square

Arrangement = str  # "A1", "A2", or "A3"
SidePair = tuple[Side, Side]


class Rect(NamedTuple):
    min_x: object
    min_y: object
    max_x: object
    max_y: object


class NotSeparableError(ValueError):
    """The two squares overlap; no separating axis line exists."""


_NORMALS: dict[Side, tuple[int, int]] = {
    "T": (0, 1),
    "R": (1, 0),
    "B": (0, -1),
    "L": (-1, 0),
}
_SIDE_OF_NORMAL = {n: s for s, n in _NORMALS.items()}

# Signed axis permutations, row-major 2x2; tried in this order.
_IDENT = (1, 0, 0, 1)
_FLIP_X = (-1, 0, 0, 1)
_ANTI = (0, -1, -1, 0)  # (x, y) -> (-y, -x): swaps the separation axis
_ROT = (0, 1, -1, 0)  # flip_x after anti


@dataclass(frozen=True)
class CanonicalFrame:
    """World-to-canonical transform for one square pair.

    ``first_is_a`` records whether the first square handed to
    :func:`canonicalize` plays role a (the canonical left square). The
    matrix is orthogonal, so the inverse transform is its transpose; the
    round trip is the identity on points and on side letters.
    """

    matrix: tuple[int, int, int, int]
    first_is_a: bool

    def map_point(self, p) -> tuple:
        m0, m1, m2, m3 = self.matrix
        return (m0 * p[0] + m1 * p[1], m2 * p[0] + m3 * p[1])

    def unmap_point(self, p) -> tuple:
        m0, m1, m2, m3 = self.matrix
        return (m0 * p[0] + m2 * p[1], m1 * p[0] + m3 * p[1])

    def map_side(self, side: Side) -> Side:
        m0, m1, m2, m3 = self.matrix
        nx, ny = _NORMALS[side]
        return _SIDE_OF_NORMAL[(m0 * nx + m1 * ny, m2 * nx + m3 * ny)]

    def unmap_side(self, side: Side) -> Side:
        m0, m1, m2, m3 = self.matrix
        nx, ny = _NORMALS[side]
        return _SIDE_OF_NORMAL[(m0 * nx + m2 * ny, m1 * nx + m3 * ny)]

    def map_rect(self, r: Rect) -> Rect:
        ax, ay = self.map_point((r.min_x, r.min_y))
        bx, by = self.map_point((r.max_x, r.max_y))
        return Rect(min(ax, bx), min(ay, by), max(ax, bx), max(ay, by))


def square_rect(q: Square) -> Rect:
    return Rect(q.min_x, q.min_y, q.max_x, q.max_y)


def classify_arrangement(rect_a: Rect, rect_b: Rect) -> Arrangement:
    """Arrangement tag for a pair already in canonical position."""
    if rect_b.max_y < rect_a.min_y:
        return "A1"
    if rect_b.min_y < rect_a.min_y:
        return "A2"
    return "A3"


def canonicalize_rects(ra: Rect, rb: Rect) -> tuple[CanonicalFrame, Arrangement]:
    vertical = ra.max_x < rb.min_x or rb.max_x < ra.min_x
    horizontal = ra.max_y < rb.min_y or rb.max_y < ra.min_y
    if not vertical and not horizontal:
        raise NotSeparableError("squares overlap; cannot canonicalize")
    # a vertical separating line is preferred when both directions exist
    candidates = (_IDENT, _FLIP_X) if vertical else (_ANTI, _ROT)
    for matrix in candidates:
        frame = CanonicalFrame(matrix=matrix, first_is_a=True)
        ma, mb = frame.map_rect(ra), frame.map_rect(rb)
        if ma.max_x < mb.min_x:
            left, right, first_is_a = ma, mb, True
        else:
            left, right, first_is_a = mb, ma, False
        if left.max_y >= right.max_y:
            frame = CanonicalFrame(matrix=matrix, first_is_a=first_is_a)
            return frame, classify_arrangement(left, right)
    raise AssertionError("one of the two candidate transforms must fit")


def canonicalize(qa: Square, qb: Square) -> tuple[CanonicalFrame, Arrangement]:
    """Frame and arrangement for two disjoint squares; errors if they overlap."""
    return canonicalize_rects(square_rect(qa), square_rect(qb))


def sort_side_pairs(pairs) -> list[SidePair]:
    """Deterministic candidate order: lexicographic with T < R < B < L."""
    return sorted(set(pairs), key=lambda p: (SIDE_ORDER[p[0]], SIDE_ORDER[p[1]]))


# ---------------------------------------------------------------------------
# Tables (canonical frame)
# ---------------------------------------------------------------------------


def monotone_feasible_set(
    arrangement: Arrangement, y_u, y_v, rect_a: Rect, rect_b: Rect
) -> list[SidePair]:
    """Side pairs admitting an xy-monotone, matrix-avoiding drawing.

    ``y_u`` / ``y_v`` are the canonical y-coordinates of the edge's right
    anchor on A and left anchor on B. All boundary comparisons are strict
    or non-strict exactly as the arrangement analysis demands; anchors are
    strip midpoints, so ties are realizable and must be decided exactly.
    """
    if arrangement == "A1":
        return sort_side_pairs([("R", "T"), ("R", "L"), ("B", "T"), ("B", "L")])
    out: set[SidePair] = {("R", "L")}
    if arrangement == "A2":
        if y_u > rect_b.max_y:
            out.add(("R", "T"))
        if y_v < rect_a.min_y:
            out.add(("B", "L"))
    else:  # A3
        if y_u > rect_b.max_y:
            out.add(("R", "T"))
        if y_u < rect_b.min_y:
            out.add(("R", "B"))
    return sort_side_pairs(out)


def is_s_drawn(
    arrangement: Arrangement, sides: SidePair, y_u, y_v, rect_a: Rect, rect_b: Rect
) -> bool:
    """Does this (canonical) side pair sweep between opposite sides?

    In A1 the two sweep drawings are R/L and B/T. In A2 only R/L qualifies,
    and only when the edge clears both squares (y_u above B's top, y_v below
    A's bottom). In A3 no drawing is a sweep.
    """
    if arrangement == "A1":
        return sides in (("R", "L"), ("B", "T"))
    if arrangement == "A2":
        return sides == ("R", "L") and y_u > rect_b.max_y and y_v < rect_a.min_y
    return False


def candidates_case2(
    arrangement: Arrangement, y_u, y_v, rect_a: Rect, rect_b: Rect
) -> list[SidePair]:
    """At most two side pairs leaving the edge monotone and sweep-free."""
    if arrangement == "A1":
        return sort_side_pairs([("R", "T"), ("B", "L")])
    if arrangement == "A2":
        if y_u > rect_b.max_y:
            if y_v >= rect_a.min_y:
                return sort_side_pairs([("R", "T"), ("R", "L")])
            return sort_side_pairs([("R", "T"), ("B", "L")])
        if y_v >= rect_a.min_y:
            return [("R", "L")]
        return sort_side_pairs([("R", "L"), ("B", "L")])
    # A3
    if y_u > rect_b.max_y:
        return sort_side_pairs([("R", "T"), ("R", "L")])
    if y_u < rect_b.min_y:
        return sort_side_pairs([("R", "L"), ("R", "B")])
    return [("R", "L")]


# Case 1 tables, keyed by (e before e* at A, e before e* at B) where "before"
# compares row-column positions. Stated for the pinned sweep drawing R/L;
# the B/T-pivot variant follows by the diagonal symmetry that exchanges the
# two sweep drawings (T<->L, B<->R) and preserves strip positions.
_CASE1_RL: dict[tuple[bool, bool], tuple[SidePair, ...]] = {
    (True, True): (("R", "T"), ("R", "L")),
    (True, False): (("R", "T"), ("B", "L")),
    (False, False): (("R", "L"), ("B", "L")),
    (False, True): (),
}
_SWAP_DIAG = {"T": "L", "L": "T", "B": "R", "R": "B"}


def candidates_case1(
    arrangement: Arrangement,
    star_sides: SidePair,
    e_before_star_at_a: bool,
    e_before_star_at_b: bool,
) -> list[SidePair]:
    """Side pairs for an edge that must not cross a pinned sweep edge.

    Valid for edges not sharing an endpoint with the pinned edge, in a pair
    already in canonical position (A1 or A2; A3 admits no S-drawing). An
    empty result means every monotone drawing of the edge crosses the
    pinned one.
    """
    if arrangement not in ("A1", "A2"):
        raise ValueError("a pinned S-drawing requires arrangement A1 or A2")
    key = (e_before_star_at_a, e_before_star_at_b)
    if star_sides == ("R", "L"):
        return sort_side_pairs(_CASE1_RL[key])
    if star_sides == ("B", "T"):
        if arrangement != "A1":
            raise ValueError("a B/T sweep drawing exists only in arrangement A1")
        return sort_side_pairs(
            tuple(
                (_SWAP_DIAG[sa], _SWAP_DIAG[sb]) for sa, sb in _CASE1_RL[key]
            )
        )
    raise ValueError(f"{star_sides!r} is not a sweep drawing")
