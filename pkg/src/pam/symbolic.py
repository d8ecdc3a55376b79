"""Orbits, itinerary coding, cylinder sets, and the vertical drift law.

Coding uses two triangles hanging off S: letter 0 for the left one,
letter 1 for the right one.  The operational default ("corrected" mode)
takes them as A^tB^tS and C^cD^cS — the triangles on which the Markov
and cone properties actually hold; "literal" mode uses the base-row
triangles ABS and CDS instead.  Both are exposed because the two
readings genuinely differ and picking silently would hide that.

Cylinders C_n = ⋂_{k≤n} T^{-k}(P_{w_k}) are computed by exact backward
clipping.  A cylinder is generally *not* convex — the map folds — so
each level is stored as a list of convex cells, each cell carrying the
single affine branch of T^n defined on it.  Horizontal widths contract
by at least 4 per level, which is the mechanism behind the coding.

On the two bottom coding pieces the map is linear with vertical
multipliers exactly 1/2 and 2, giving the exact drift identity
y_n = y_0 · 2^(Σ sign(x_k)); `confined_start` builds points realizing
any prescribed word inside that linear regime via the sector coordinate
r = x/y, on which the two branches act as r ↦ 20r + 19 and
r ↦ 19 − 20r, both onto [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .geometry import AffineMap, ConvexPolygon, Point, clip, region_area
from .mapmodel import OutsideDomain, PiecewiseAffineMap

__all__ = [
    "SymbolicError",
    "OrbitLeftRegion",
    "CodingTriangles",
    "coding_triangles",
    "OrbitRecord",
    "iterate",
    "CylinderChain",
    "cylinder",
    "fiber_width",
    "count_cylinders",
    "max_fiber_width",
    "DriftVerdict",
    "drift_check",
    "confined_start",
    "CODING_MODES",
]


class SymbolicError(Exception):
    """Base class for symbolic-dynamics failures."""


class OrbitLeftRegion(SymbolicError):
    """An orbit handed to drift_check leaves the coding region.

    `index` is the first offending step.
    """

    def __init__(self, index: int, message: str):
        super().__init__(f"step {index}: {message}")
        self.index = index


CODING_MODES = ("corrected", "literal")


@dataclass(frozen=True)
class CodingTriangles:
    """The two coding triangles (letter 0 on the left, 1 on the right)."""

    mode: str
    label0: str
    label1: str
    p0: ConvexPolygon
    p1: ConvexPolygon

    def classify(self, p: Point) -> Optional[int]:
        if self.p0.contains(p):
            return 0
        if self.p1.contains(p):
            return 1
        return None


def coding_triangles(
    t: PiecewiseAffineMap, mode: str = "corrected"
) -> CodingTriangles:
    if mode == "corrected":
        labels = ("A^tB^tS", "C^cD^cS")
    elif mode == "literal":
        labels = ("ABS", "CDS")
    else:
        raise ValueError(f"unknown coding mode {mode!r}; pick from {CODING_MODES}")
    return CodingTriangles(mode, *labels, t.region(labels[0]), t.region(labels[1]))


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class OrbitRecord:
    """An exact orbit segment with per-step signs and coding letters.

    coding[k] is 0/1 when the k-th point lies in the corresponding
    coding triangle and None otherwise.
    """

    points: Tuple[Point, ...]
    signs: Tuple[int, ...]
    coding: Tuple[Optional[int], ...]

    def __len__(self) -> int:
        return len(self.points)


def iterate(
    t: PiecewiseAffineMap,
    p: Point,
    n: int,
    triangles: Optional[CodingTriangles] = None,
) -> OrbitRecord:
    """Exact orbit p, T(p), ..., T^n(p) with signs and coding letters."""
    if n < 0:
        raise ValueError("orbit length must be nonnegative")
    if triangles is None:
        triangles = coding_triangles(t)
    points = [Point(Fraction(p[0]), Fraction(p[1]))]
    if not t.domain.contains(points[0]):
        raise OutsideDomain(f"point {points[0]} is not in the domain")
    for _ in range(n):
        points.append(t.evaluate(points[-1]))
    return OrbitRecord(
        tuple(points),
        tuple(_sign(q.x) for q in points),
        tuple(triangles.classify(q) for q in points),
    )


# ---------------------------------------------------------------------------
# cylinders


def _as_word(word) -> Tuple[int, ...]:
    letters = tuple(int(c) for c in word)
    if any(c not in (0, 1) for c in letters):
        raise ValueError(f"word must be over {{0,1}}, got {word!r}")
    return letters


class _Branches:
    """Per-letter list of (reachable target part, branch map) pairs.

    Stepping a cylinder one level means: keep the part of each cell
    whose current image lands in some piece's domain intersected with
    the requested coding triangle, and compose that piece's map on top.
    """

    def __init__(self, t: PiecewiseAffineMap, triangles: CodingTriangles):
        self.per_letter = []
        for target in (triangles.p0, triangles.p1):
            pairs = []
            for piece in t.pieces:
                # the part of this piece whose *next* image lands in the
                # requested coding triangle
                pulled = target.transformed(piece.map.inverse())
                part = clip(piece.domain, pulled)
                if part is not None:
                    pairs.append((part, piece.map))
            self.per_letter.append(pairs)

    def step(self, cells, letter: int):
        out = []
        for poly, g in cells:
            back = g.inverse()
            for part, branch in self.per_letter[letter]:
                cell = clip(poly, part.transformed(back))
                if cell is not None:
                    out.append((cell, branch.compose(g)))
        return out


@dataclass(frozen=True)
class CylinderChain:
    """Nested exact cylinders of one itinerary word.

    levels[n] lists the convex cells whose union is C_n; the cells of a
    level refine those of the previous one, so nesting holds by
    construction.
    """

    word: Tuple[int, ...]
    levels: Tuple[Tuple[ConvexPolygon, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def polygons(self, n: int) -> List[ConvexPolygon]:
        return list(self.levels[n])

    def is_empty(self, n: int) -> bool:
        return not self.levels[n]


def cylinder(
    t: PiecewiseAffineMap,
    word,
    triangles: Optional[CodingTriangles] = None,
) -> CylinderChain:
    """Exact cylinder chain C_0 ⊇ C_1 ⊇ ... for the given word."""
    letters = _as_word(word)
    if not letters:
        raise ValueError("word must be nonempty")
    if triangles is None:
        triangles = coding_triangles(t)
    branches = _Branches(t, triangles)
    target0 = triangles.p0 if letters[0] == 0 else triangles.p1
    cells = [(target0, AffineMap.identity())]
    levels = [tuple(c for c, _ in cells)]
    for letter in letters[1:]:
        cells = branches.step(cells, letter)
        levels.append(tuple(c for c, _ in cells))
    return CylinderChain(letters, tuple(levels))


def _max_chord(cell: ConvexPolygon) -> Fraction:
    """Longest horizontal chord of a convex polygon, exactly.

    Chord length is a concave piecewise-linear function of the height, so
    the maximum is attained at the height of some vertex; it suffices to
    scan those heights.
    """
    verts = cell.vertices
    m = len(verts)
    best = Fraction(0)
    for h in sorted({v.y for v in verts}):
        xs = []
        for i in range(m):
            a = verts[i]
            b = verts[(i + 1) % m]
            if a.y == h:
                xs.append(a.x)
            lo, hi = (a.y, b.y) if a.y <= b.y else (b.y, a.y)
            if lo < h < hi:
                s = (h - a.y) / (b.y - a.y)
                xs.append(a.x + (b.x - a.x) * s)
        if xs:
            width = max(xs) - min(xs)
            if width > best:
                best = width
    return best


def fiber_width(chain: CylinderChain, n: int) -> Fraction:
    """Length of the longest horizontal chord across the cells of C_n.

    Horizontal chords are what the inverse branches contract (each step
    divides them by the upper-left matrix entry, at least 4 in absolute
    value).  Bounding boxes would not do: every cylinder tapers into the
    fixed corner S between two lines x = κ·y, so its x-extent stays
    macroscopic at every depth even as the chords collapse.
    """
    cells = chain.levels[n]
    best = Fraction(0)
    for cell in cells:
        width = _max_chord(cell)
        if width > best:
            best = width
    return best


def count_cylinders(
    t: PiecewiseAffineMap,
    n: int,
    triangles: Optional[CodingTriangles] = None,
) -> int:
    """Number of length-n words whose cylinder is nonempty.

    Full Markov branching makes this 2^n; the count is established by
    exhaustive exact clipping with shared prefixes, not assumed.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if triangles is None:
        triangles = coding_triangles(t)
    branches = _Branches(t, triangles)

    def descend(cells, remaining: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for letter in (0, 1):
            nxt = branches.step(cells, letter)
            if nxt:
                total += descend(nxt, remaining - 1)
        return total

    total = 0
    for letter, target in ((0, triangles.p0), (1, triangles.p1)):
        total += descend([(target, AffineMap.identity())], n - 1)
    return total


def max_fiber_width(
    t: PiecewiseAffineMap,
    n: int,
    triangles: Optional[CodingTriangles] = None,
) -> dict:
    """Widest fiber among all depth-n cylinders, keyed by first letter.

    One shared-prefix descent over the full binary word tree; for each
    first letter the result is the maximum horizontal-chord width over
    the 2^(n-1) nonempty leaf cylinders below it, so comparing it
    against a bound checks *every* cylinder at that depth.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if triangles is None:
        triangles = coding_triangles(t)
    branches = _Branches(t, triangles)

    def widest(cells, remaining: int) -> Fraction:
        if remaining == 0:
            return max((_max_chord(cell) for cell, _ in cells), default=Fraction(0))
        best = Fraction(0)
        for letter in (0, 1):
            nxt = branches.step(cells, letter)
            if nxt:
                sub = widest(nxt, remaining - 1)
                if sub > best:
                    best = sub
        return best

    return {
        letter: widest([(target, AffineMap.identity())], n - 1)
        for letter, target in ((0, triangles.p0), (1, triangles.p1))
    }


# ---------------------------------------------------------------------------
# vertical drift


@dataclass(frozen=True)
class DriftVerdict:
    """Outcome of the drift law on one orbit segment."""

    steps: int
    exponent: int  # Σ sign(x_k) over the first `steps` steps
    identity_holds: Optional[bool]  # exact law; None when not applicable
    inequality_holds: bool  # y_{k+1} >= 2^(sign x_k) · y_k at every step


def drift_check(
    t: PiecewiseAffineMap,
    record: OrbitRecord,
    region: str = "core",
) -> DriftVerdict:
    """Check the drift law y_n = y_0 · 2^(Σ sign x_k) on an orbit.

    region="core" demands the orbit stay in A^cB^cS ∪ C^cD^cS (where the
    law is an exact identity); region="wide" only demands
    A^tB^tS ∪ C^cD^cS and checks the one-sided inequality.  Raises
    OrbitLeftRegion when the orbit leaves the requested region or
    touches the coding boundary x = 0 before its last step.
    """
    if region == "core":
        zones = (t.region("A^cB^cS"), t.region("C^cD^cS"))
    elif region == "wide":
        zones = (t.region("A^tB^tS"), t.region("C^cD^cS"))
    else:
        raise ValueError(f"unknown region {region!r}")
    n = len(record.points) - 1
    if n < 1:
        raise ValueError("need at least one step")
    for k in range(n):
        p = record.points[k]
        if record.signs[k] == 0:
            raise OrbitLeftRegion(k, f"point {p} sits on the coding boundary x = 0")
        if not (zones[0].contains(p) or zones[1].contains(p)):
            raise OrbitLeftRegion(k, f"point {p} left the {region} coding region")

    exponent = sum(record.signs[:n])
    inequality = all(
        record.points[k + 1].y >= record.points[k].y * Fraction(2) ** record.signs[k]
        for k in range(n)
    )
    identity: Optional[bool]
    if region == "core":
        identity = record.points[n].y == record.points[0].y * Fraction(2) ** exponent
    else:
        identity = None
    return DriftVerdict(n, exponent, identity, inequality)


def confined_start(word, r_end: Fraction = Fraction(1, 3)) -> Point:
    """Exact point whose orbit realizes `word` inside the linear coding
    pieces A^cB^cS and C^cD^cS.

    Works backwards in the sector coordinate r = x/y: branch 0 acts as
    r ↦ 20r + 19 (from [-1, -9/10] onto [-1, 1]) and branch 1 as
    r ↦ 19 − 20r (from [9/10, 1] onto [-1, 1]), so pulling any interior
    r_end back through the word pins the itinerary.  The height y_0 is
    then chosen small enough that every intermediate level stays below
    the y^c line, keeping the whole orbit in the linear regime.
    """
    letters = _as_word(word)
    if not letters:
        raise ValueError("word must be nonempty")
    r = Fraction(r_end)
    if not -1 < r < 1:
        raise ValueError("r_end must be strictly inside (-1, 1)")
    for letter in reversed(letters):
        r = (r - 19) / 20 if letter == 0 else (19 - r) / 20
    increments = [1 if letter else -1 for letter in letters]
    peak = 0
    drift = 0
    for inc in increments[:-1]:
        drift += inc
        peak = max(peak, drift)
    y0 = Fraction(1, 2) * Fraction(2) ** (-peak - 1)
    return Point(r * y0, y0)
