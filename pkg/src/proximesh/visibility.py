"""Visibility among sites with constraining segments.

Two sites see each other when the open segment between them contains no
third site and meets no constraint in an interior point. Endpoint
contact with a constraint does not block visibility: the blocking test
is interior-disjointness, not empty intersection, and the audit reports
pairs where the two readings would differ.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .complexes import RelationReport
from .geometry import (
    Point2,
    Segment,
    orient2d,
    point_in_segment_interior,
    segments_share_interior_point,
    squared_distance,
)
from .mesh import SiteSet


@dataclass(frozen=True, slots=True)
class ConstraintSet:
    """Constraining segments given as pairs of site indices."""

    pairs: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "ConstraintSet":
        return cls(frozenset((p, q) if p < q else (q, p) for p, q in pairs))

    @classmethod
    def empty(cls) -> "ConstraintSet":
        return cls(frozenset())

    def validate(self, sites: SiteSet) -> None:
        n = len(sites)
        for p, q in self.pairs:
            if p == q:
                raise ValueError(f"constraint endpoints coincide: {p}")
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"constraint indices out of range: {(p, q)}")

    def segments(self, sites: SiteSet) -> list[tuple[tuple[int, int], Segment]]:
        return [
            (pair, Segment(sites[pair[0]], sites[pair[1]]))
            for pair in sorted(self.pairs)
        ]


def collinear_visible(p: Point2, q: Point2, sites: SiteSet) -> bool:
    """True when no third site lies strictly between sites p and q."""
    if p == q:
        raise ValueError("visibility needs two distinct sites")
    for name, pt in (("first", p), ("second", q)):
        if pt not in sites.sites:
            raise ValueError(f"{name} point is not a site: ({pt.x}, {pt.y})")
    seg = Segment(p, q)
    return not any(
        point_in_segment_interior(s, seg)
        for s in sites.sites
        if s != p and s != q
    )


def segment_visible(
    p: int, q: int, sites: SiteSet, constraints: ConstraintSet
) -> bool:
    """True when the open segment between sites p and q avoids all other
    sites and shares no interior point with any other constraint."""
    n = len(sites)
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError(f"site index out of range: {(p, q)}")
    if p == q:
        raise ValueError("visibility needs two distinct sites")
    constraints.validate(sites)
    seg = Segment(sites[p], sites[q])
    key = (p, q) if p < q else (q, p)
    for s in range(n):
        if s != p and s != q and point_in_segment_interior(sites[s], seg):
            return False
    for pair, cseg in constraints.segments(sites):
        if pair == key:
            continue
        if segments_share_interior_point(seg, cseg):
            return False
    return True


def audit_segment_visibility(
    sites: SiteSet,
    constraints: ConstraintSet,
    trials: int,
    seed: int,
) -> list[RelationReport]:
    """Check the visibility conclusions on sampled (or all) site pairs.

    For every pair the blocking test declares visible, interior sample
    points of the segment must keep positive distance to the other sites
    on its line, and no other constraint may share an interior point.
    Pairs where endpoint contact with a constraint is the only contact
    are flagged as a reading divergence, not a failure: a literal
    empty-intersection condition would have excluded them.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    constraints.validate(sites)
    n = len(sites)
    all_pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    if len(all_pairs) <= trials:
        pairs = all_pairs
    else:
        rng = random.Random(seed)
        pairs = sorted(rng.sample(all_pairs, trials))
    reports = []
    for p, q in pairs:
        if not segment_visible(p, q, sites, constraints):
            continue
        violation = _visible_pair_violation(p, q, sites, constraints)
        divergence = _endpoint_contact_pairs(p, q, sites, constraints)
        note = ""
        if divergence:
            note = (
                "endpoint-only constraint contact at "
                f"{divergence}; a literal empty-intersection reading "
                "would block this pair"
            )
        reports.append(
            RelationReport(
                relation="segment_visibility",
                operands=(f"site {p}", f"site {q}"),
                verdict=violation is None,
                counterexample=violation,
                note=note,
            )
        )
    return reports


def _visible_pair_violation(
    p: int, q: int, sites: SiteSet, constraints: ConstraintSet
) -> Optional[tuple]:
    a, b = sites[p], sites[q]
    seg = Segment(a, b)
    online = [
        s
        for s in range(len(sites))
        if s != p and s != q and orient2d(a, b, sites[s]) == 0
    ]
    for t in _sample_parameters(p, q, sites, online):
        x = Point2(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
        for s in online:
            if squared_distance(x, sites[s]) == 0:
                return ("site_in_open_segment", s)
    key = (p, q) if p < q else (q, p)
    for pair, cseg in constraints.segments(sites):
        if pair == key:
            continue
        if segments_share_interior_point(seg, cseg):
            return ("constraint_interior_contact", pair)
    return None


def _sample_parameters(
    p: int, q: int, sites: SiteSet, online: Sequence[int]
) -> list[Fraction]:
    """Exact interior parameters: fixed quarters plus the projection of
    every collinear site that falls inside the open segment."""
    a, b = sites[p], sites[q]
    params = {Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)}
    dx, dy = b.x - a.x, b.y - a.y
    denom = dx * dx + dy * dy
    for s in online:
        t = ((sites[s].x - a.x) * dx + (sites[s].y - a.y) * dy) / denom
        if 0 < t < 1:
            params.add(t)
    return sorted(params)


def _endpoint_contact_pairs(
    p: int, q: int, sites: SiteSet, constraints: ConstraintSet
) -> list[tuple[int, int]]:
    """Constraints that touch segment pq only at an endpoint of either."""
    a, b = sites[p], sites[q]
    seg = Segment(a, b)
    key = (p, q) if p < q else (q, p)
    out = []
    for pair, cseg in constraints.segments(sites):
        if pair == key:
            continue
        if segments_share_interior_point(seg, cseg):
            continue
        if _segments_touch(seg, cseg):
            out.append(pair)
    return out


def _segments_touch(s1: Segment, s2: Segment) -> bool:
    """Closed segments intersect at all (any contact counts)."""
    o1 = orient2d(s1.a, s1.b, s2.a)
    o2 = orient2d(s1.a, s1.b, s2.b)
    o3 = orient2d(s2.a, s2.b, s1.a)
    o4 = orient2d(s2.a, s2.b, s1.b)
    if o1 * o2 <= 0 and o3 * o4 <= 0:
        if o1 == o2 == 0:
            for end in (s2.a, s2.b):
                if end in (s1.a, s1.b) or point_in_segment_interior(end, s1):
                    return True
            for end in (s1.a, s1.b):
                if point_in_segment_interior(end, s2):
                    return True
            return False
        return True
    return False
