"""Exact rational planar geometry.

Points, 2x2 matrices, affine maps, convex polygons, clipping, union
areas and eigenanalysis, all over `fractions.Fraction`.  Nothing in this
module ever rounds: every predicate is decided by integer arithmetic.

Polygons are canonicalized on construction (counter-clockwise, no
repeated or collinear vertices), so equality and hashing behave like
value semantics.  Internally a polygon keeps its vertices as reduced
homogeneous integer triples ``(X, Y, W)``, ``W > 0`` — clipping and
affine images then need one gcd per produced vertex instead of one per
arithmetic operation, which is an order of magnitude faster than doing
Sutherland–Hodgman directly on Fractions.  The public surface speaks
Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Union

__all__ = [
    "GeometryError",
    "CollinearSources",
    "Rational",
    "RationalLike",
    "parse_rational",
    "format_rational",
    "Point",
    "Matrix2",
    "AffineMap",
    "ConvexPolygon",
    "clip",
    "intersection_area",
    "region_area",
    "symdiff_area",
    "convex_difference",
    "region_difference",
    "Surd",
    "Eigen2Result",
    "eigen2",
    "affine_from_point_pairs",
]

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class GeometryError(ValueError):
    """Invalid geometric input (degenerate polygon, singular matrix, ...)."""


class CollinearSources(GeometryError):
    """The three source points of an affine solve are collinear."""


def _rat(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}: this module is exact, pass Fraction/int/str"
        )
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``'p/q'`` or ``'p'`` into a Fraction (whitespace tolerated)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``p/q`` (or ``p`` when integral), no spaces."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @staticmethod
    def of(x: RationalLike, y: RationalLike) -> "Point":
        return Point(_rat(x), _rat(y))

    def __add__(self, other: "Point") -> "Point":  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: RationalLike) -> "Point":
        k = _rat(k)
        return Point(self.x * k, self.y * k)

    def __str__(self) -> str:
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


def lerp(p: Point, q: Point, t: RationalLike) -> Point:
    """Point ``p + t*(q - p)`` on the line through p and q."""
    t = _rat(t)
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def midpoint(p: Point, q: Point) -> Point:
    return lerp(p, q, Fraction(1, 2))


# --------------------------------------------------------------------------
# homogeneous integer layer
#
# A point (x, y) is stored as integers (X, Y, W) with x = X/W, y = Y/W,
# W > 0 and gcd(X, Y, W) = 1 — a *unique* representation, so tuple
# equality is point equality.  A directed line through homogeneous points
# p, q is their cross product L; L . r is then det[p q r], i.e. (up to a
# positive factor) twice the signed area of the triangle (p, q, r), so
# "r weakly left of p->q" is simply L . r >= 0.

_HPoint = tuple  # (X, Y, W)


def _hpoint(x: Fraction, y: Fraction) -> _HPoint:
    w = math.lcm(x.denominator, y.denominator)
    return (x.numerator * (w // x.denominator), y.numerator * (w // y.denominator), w)


def _hreduce(x: int, y: int, w: int) -> _HPoint:
    if w < 0:
        x, y, w = -x, -y, -w
    g = math.gcd(x, y, w)
    if g > 1:
        return (x // g, y // g, w // g)
    return (x, y, w)


def _hcross(p: _HPoint, q: _HPoint) -> tuple:
    # line through p and q; also used as the homogeneous cross product
    a = p[1] * q[2] - p[2] * q[1]
    b = p[2] * q[0] - p[0] * q[2]
    c = p[0] * q[1] - p[1] * q[0]
    g = math.gcd(a, b, c)
    if g > 1:
        return (a // g, b // g, c // g)
    return (a, b, c)


def _hside(line: tuple, p: _HPoint) -> int:
    return line[0] * p[0] + line[1] * p[1] + line[2] * p[2]


def _hdet3(p: _HPoint, q: _HPoint, r: _HPoint) -> int:
    return _hside(_hcross(p, q), r)


def _to_fraction(p: _HPoint) -> Point:
    return Point(Fraction(p[0], p[2]), Fraction(p[1], p[2]))


def _clip_halfplane(verts: Sequence[_HPoint], line: tuple) -> list:
    """One Sutherland–Hodgman pass; keeps the side where line . p >= 0."""
    sides = [_hside(line, v) for v in verts]
    out: list = []
    n = len(verts)
    for i in range(n):
        j = (i + 1) % n
        si, sj = sides[i], sides[j]
        if si >= 0:
            out.append(verts[i])
        if (si > 0 > sj) or (si < 0 < sj):
            pi, pj = verts[i], verts[j]
            # sj*pi - si*pj lies on the line and strictly between pi, pj
            out.append(
                _hreduce(
                    sj * pi[0] - si * pj[0],
                    sj * pi[1] - si * pj[1],
                    sj * pi[2] - si * pj[2],
                )
            )
    return out


def _dedupe_cyclic(verts: list) -> list:
    out = [v for i, v in enumerate(verts) if v != verts[i - 1]]
    return out


def _drop_collinear(verts: list) -> list:
    changed = True
    while changed and len(verts) >= 3:
        changed = False
        kept = []
        n = len(verts)
        for i in range(n):
            if _hdet3(verts[i - 1], verts[i], verts[(i + 1) % n]) == 0:
                changed = True
            else:
                kept.append(verts[i])
        verts = kept
    return verts


class ConvexPolygon:
    """Immutable convex polygon with exact rational vertices.

    Construction validates convexity and normalizes the vertex cycle:
    counter-clockwise, no duplicate or collinear vertices.  Clockwise
    input is accepted and reversed.
    """

    __slots__ = ("_h", "_verts", "_area", "_lines", "_bounds", "_canon")

    def __init__(self, points: Iterable):
        hverts = []
        for p in points:
            if isinstance(p, Point):
                x, y = p
            else:
                x, y = p
            hverts.append(_hpoint(_rat(x), _rat(y)))
        hverts = _dedupe_cyclic(hverts)
        hverts = _drop_collinear(hverts)
        if len(hverts) < 3:
            raise GeometryError("polygon needs >= 3 non-collinear vertices")
        n = len(hverts)
        signs = {
            1 if _hdet3(hverts[i - 1], hverts[i], hverts[(i + 1) % n]) > 0 else -1
            for i in range(n)
        }
        if len(signs) != 1:
            raise GeometryError("polygon is not convex")
        if signs == {-1}:
            hverts.reverse()
        self._init_from_h(tuple(hverts))

    def _init_from_h(self, hverts: tuple) -> None:
        self._h = hverts
        self._verts: Optional[tuple] = None
        self._area: Optional[Fraction] = None
        self._lines: Optional[tuple] = None
        self._bounds = None
        self._canon = None

    @classmethod
    def _from_h(cls, hverts: tuple) -> "ConvexPolygon":
        # internal fast path: caller guarantees a CCW convex cycle
        self = object.__new__(cls)
        self._init_from_h(hverts)
        return self

    @property
    def vertices(self) -> tuple:
        if self._verts is None:
            self._verts = tuple(_to_fraction(v) for v in self._h)
        return self._verts

    @property
    def area(self) -> Fraction:
        if self._area is None:
            total = Fraction(0)
            h = self._h
            n = len(h)
            for i in range(n):
                p, q = h[i], h[(i + 1) % n]
                total += Fraction(p[0] * q[1] - q[0] * p[1], p[2] * q[2])
            self._area = total / 2
        return self._area

    def _edge_lines(self) -> tuple:
        if self._lines is None:
            h = self._h
            n = len(h)
            self._lines = tuple(_hcross(h[i], h[(i + 1) % n]) for i in range(n))
        return self._lines

    def bounds(self) -> tuple:
        """(xmin, ymin, xmax, ymax) as Fractions."""
        if self._bounds is None:
            xs = [Fraction(v[0], v[2]) for v in self._h]
            ys = [Fraction(v[1], v[2]) for v in self._h]
            self._bounds = (min(xs), min(ys), max(xs), max(ys))
        return self._bounds

    def contains(self, point: Point) -> bool:
        """Closed-set membership (boundary counts as inside)."""
        hp = _hpoint(_rat(point[0]), _rat(point[1]))
        return all(_hside(line, hp) >= 0 for line in self._edge_lines())

    def edges(self):
        """Yield vertex pairs (p_i, p_{i+1}) around the boundary."""
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            yield vs[i], vs[(i + 1) % n]

    def clip(self, other: "ConvexPolygon") -> Optional["ConvexPolygon"]:
        return clip(self, other)

    def transformed(self, f: "AffineMap") -> "ConvexPolygon":
        hm = f._homogeneous()
        a, b, e, c, d, t, g = hm
        out = [
            _hreduce(a * x + b * y + e * w, c * x + d * y + t * w, g * w)
            for (x, y, w) in self._h
        ]
        if f.linear.det() < 0:
            out.reverse()
        out = _drop_collinear(_dedupe_cyclic(out))
        if len(out) < 3:
            raise GeometryError("affine image is degenerate (singular linear part)")
        return ConvexPolygon._from_h(tuple(out))

    def _canonical(self) -> tuple:
        if self._canon is None:
            h = self._h
            k = min(range(len(h)), key=lambda i: h[i])
            self._canon = h[k:] + h[:k]
        return self._canon

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvexPolygon):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __repr__(self) -> str:
        inner = ", ".join(str(v) for v in self.vertices)
        return f"ConvexPolygon[{inner}]"


def clip(p: ConvexPolygon, q: ConvexPolygon) -> Optional[ConvexPolygon]:
    """Exact intersection of two convex polygons.

    Returns None when the intersection is empty *or* has zero area
    (polygons that merely touch along boundaries do not intersect in any
    sense this package cares about).
    """
    # quick reject on bounding boxes before any big-integer work
    pb, qb = p.bounds(), q.bounds()
    if pb[2] < qb[0] or qb[2] < pb[0] or pb[3] < qb[1] or qb[3] < pb[1]:
        return None
    verts = list(p._h)
    for line in q._edge_lines():
        verts = _clip_halfplane(verts, line)
        if len(verts) < 3:
            return None
    verts = _drop_collinear(_dedupe_cyclic(verts))
    if len(verts) < 3:
        return None
    return ConvexPolygon._from_h(tuple(verts))


def _union_area(polys: Sequence[ConvexPolygon]) -> Fraction:
    total = Fraction(0)
    seen: list = []
    for poly in polys:
        overlaps = [c for c in (clip(poly, s) for s in seen) if c is not None]
        total += poly.area - _union_area(overlaps)
        seen.append(poly)
    return total


def region_area(regions: Sequence[ConvexPolygon]) -> Fraction:
    """Exact area of the union of convex polygons (overlaps counted once).

    Inclusion–exclusion, incremental form: each polygon contributes its
    area minus the area it shares with the union of its predecessors;
    the shared part is itself a union of convex pieces, so the same
    routine recurses.  Empty intersections prune immediately, which
    keeps this fast on the near-disjoint collections produced here.
    """
    return _union_area(list(regions))


def intersection_area(a: Sequence[ConvexPolygon], b: Sequence[ConvexPolygon]) -> Fraction:
    """Exact area of (union of a) ∩ (union of b)."""
    pieces = [c for pa in a for c in (clip(pa, pb) for pb in b) if c is not None]
    return _union_area(pieces)


def symdiff_area(a: Sequence[ConvexPolygon], b: Sequence[ConvexPolygon]) -> Fraction:
    """Area of the symmetric difference of two unions of convex polygons.

    Zero iff the unions agree up to measure zero — the workhorse equality
    oracle for region identities.
    """
    a, b = list(a), list(b)
    return _union_area(a) + _union_area(b) - 2 * intersection_area(a, b)


def convex_difference(
    minuend: ConvexPolygon, subtrahend: ConvexPolygon
) -> List[ConvexPolygon]:
    """Decompose minuend ∖ subtrahend into interior-disjoint convex pieces.

    Standard sweep over the subtrahend's edges: the part of the minuend
    strictly outside edge i (but inside edges 0..i-1) is convex; what
    survives all edges lies inside the subtrahend and is discarded.
    Pieces of zero area are dropped, so the result is empty exactly when
    the difference has measure zero.
    """
    pieces: List[ConvexPolygon] = []
    remaining = list(minuend._h)
    for line in subtrahend._edge_lines():
        flipped = (-line[0], -line[1], -line[2])
        outside = _drop_collinear(_dedupe_cyclic(_clip_halfplane(remaining, flipped)))
        if len(outside) >= 3:
            pieces.append(ConvexPolygon._from_h(tuple(outside)))
        remaining = _clip_halfplane(remaining, line)
        if len(remaining) < 3:
            break
    return pieces


def region_difference(
    minuend: Sequence[ConvexPolygon], subtrahend: Sequence[ConvexPolygon]
) -> List[ConvexPolygon]:
    """(union of minuend) ∖ (union of subtrahend) as convex pieces."""
    pieces = list(minuend)
    for s in subtrahend:
        pieces = [frag for p in pieces for frag in convex_difference(p, s)]
    return pieces


@dataclass(frozen=True)
class Matrix2:
    """2x2 rational matrix, row-major: [[a, b], [c, d]]."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @staticmethod
    def of(a: RationalLike, b: RationalLike, c: RationalLike, d: RationalLike) -> "Matrix2":
        return Matrix2(_rat(a), _rat(b), _rat(c), _rat(d))

    @staticmethod
    def identity() -> "Matrix2":
        return Matrix2(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def apply(self, x: Fraction, y: Fraction):
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det == 0:
            raise GeometryError("matrix is singular")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __str__(self) -> str:
        f = format_rational
        return f"({f(self.a)}, {f(self.b)}; {f(self.c)}, {f(self.d)})"


class AffineMap:
    """x ↦ L·x + t with L a Matrix2 and t a rational translation."""

    __slots__ = ("linear", "translation", "_hcache")

    def __init__(self, linear: Matrix2, translation):
        tx, ty = translation
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "translation", (_rat(tx), _rat(ty)))
        object.__setattr__(self, "_hcache", None)

    def __setattr__(self, *_):
        raise AttributeError("AffineMap is immutable")

    @staticmethod
    def identity() -> "AffineMap":
        return AffineMap(Matrix2.identity(), (0, 0))

    def apply(self, p: Point) -> Point:
        x, y = _rat(p[0]), _rat(p[1])
        lx, ly = self.linear.apply(x, y)
        return Point(lx + self.translation[0], ly + self.translation[1])

    def __call__(self, p: Point) -> Point:
        return self.apply(p)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """The map "apply `inner` first, then self"."""
        lin = self.linear @ inner.linear
        tx, ty = self.linear.apply(*inner.translation)
        return AffineMap(
            lin, (tx + self.translation[0], ty + self.translation[1])
        )

    def inverse(self) -> "AffineMap":
        inv = self.linear.inverse()
        tx, ty = inv.apply(*self.translation)
        return AffineMap(inv, (-tx, -ty))

    def is_invertible(self) -> bool:
        return self.linear.det() != 0

    def _homogeneous(self) -> tuple:
        # (A, B, E, C, D, F, G): (x, y) -> ((Ax+By+Ew)/(Gw), (Cx+Dy+Fw)/(Gw))
        cached = self._hcache
        if cached is None:
            lin, (tx, ty) = self.linear, self.translation
            g = math.lcm(
                lin.a.denominator,
                lin.b.denominator,
                lin.c.denominator,
                lin.d.denominator,
                tx.denominator,
                ty.denominator,
            )
            cached = (
                lin.a.numerator * (g // lin.a.denominator),
                lin.b.numerator * (g // lin.b.denominator),
                tx.numerator * (g // tx.denominator),
                lin.c.numerator * (g // lin.c.denominator),
                lin.d.numerator * (g // lin.d.denominator),
                ty.numerator * (g // ty.denominator),
                g,
            )
            object.__setattr__(self, "_hcache", cached)
        return cached

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.linear == other.linear and self.translation == other.translation

    def __hash__(self) -> int:
        return hash((self.linear, self.translation))

    def __repr__(self) -> str:
        f = format_rational
        return f"AffineMap({self.linear}, t=({f(self.translation[0])}, {f(self.translation[1])}))"


def affine_from_point_pairs(pairs) -> AffineMap:
    """The unique affine map sending three given points to three targets.

    `pairs` is three (source, target) point pairs.  Raises
    CollinearSources when the source points do not span the plane.
    """
    (p1, q1), (p2, q2), (p3, q3) = pairs
    x1, y1 = _rat(p1[0]), _rat(p1[1])
    x2, y2 = _rat(p2[0]), _rat(p2[1])
    x3, y3 = _rat(p3[0]), _rat(p3[1])
    det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
    if det == 0:
        raise CollinearSources(f"source points are collinear: {p1}, {p2}, {p3}")

    def solve(v1: Fraction, v2: Fraction, v3: Fraction):
        # row (m, n, t) with m*x_i + n*y_i + t = v_i, by Cramer's rule
        d1, d2 = v2 - v1, v3 - v1
        m = (d1 * (y3 - y1) - d2 * (y2 - y1)) / det
        n = ((x2 - x1) * d2 - (x3 - x1) * d1) / det
        t = v1 - m * x1 - n * y1
        return m, n, t

    a, b, e = solve(_rat(q1[0]), _rat(q2[0]), _rat(q3[0]))
    c, d, f = solve(_rat(q1[1]), _rat(q2[1]), _rat(q3[1]))
    return AffineMap(Matrix2(a, b, c, d), (e, f))


# --------------------------------------------------------------------------
# exact eigenanalysis of 2x2 rational matrices


def _squarefree(n: int):
    """n = s^2 * r with r squarefree; returns (s, r).  Sign stays on r."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, r, p = 1, 1, 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            s *= p ** (k // 2)
            if k % 2:
                r *= p
        p += 1 if p == 2 else 2
    return s, sign * r * n


def _exact_sqrt(value: Fraction):
    """sqrt of a nonnegative Fraction as (rational factor, squarefree radicand)."""
    num, den = value.numerator, value.denominator
    s, r = _squarefree(num * den)
    return Fraction(s, den), r


@dataclass(frozen=True)
class Surd:
    """Exact quadratic irrational p + q*sqrt(r), r a squarefree integer.

    r < 0 encodes a complex pair; float() then refuses.
    """

    p: Fraction
    q: Fraction
    r: int

    def __float__(self) -> float:
        if self.r < 0:
            raise ValueError("complex surd has no float value")
        return float(self.p) + float(self.q) * math.sqrt(self.r)

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.q, self.r)

    def __str__(self) -> str:
        f = format_rational
        sign = "+" if self.q >= 0 else "-"
        return f"{f(self.p)} {sign} {f(abs(self.q))}*sqrt({self.r})"


@dataclass(frozen=True)
class Eigen2Result:
    """Spectrum of a rational 2x2 matrix.

    `eigenvalues` lists distinct roots of the characteristic polynomial
    (Fractions when rational, Surds otherwise) with matching
    `multiplicities`; `eigenvectors` holds a primitive integer direction
    for each rational eigenvalue and None for irrational ones.
    """

    eigenvalues: tuple
    multiplicities: tuple
    eigenvectors: tuple

    def rational_pairs(self):
        """(eigenvalue, eigenvector) for the rational part of the spectrum."""
        return [
            (lam, vec)
            for lam, vec in zip(self.eigenvalues, self.eigenvectors)
            if isinstance(lam, Fraction)
        ]


def _primitive_direction(x: Fraction, y: Fraction):
    scale = math.lcm(x.denominator, y.denominator)
    ix, iy = int(x * scale), int(y * scale)
    g = math.gcd(ix, iy)
    ix, iy = ix // g, iy // g
    if ix < 0 or (ix == 0 and iy < 0):
        ix, iy = -ix, -iy
    return (ix, iy)


def _eigenvector(m: Matrix2, lam: Fraction):
    k = (m.a - lam, m.b, m.c, m.d - lam)
    if k[0] == 0 and k[1] == 0:
        if k[2] == 0 and k[3] == 0:
            return None  # scalar matrix: every direction works
        return _primitive_direction(k[3], -k[2])
    return _primitive_direction(k[1], -k[0])


def eigen2(m: Matrix2) -> Eigen2Result:
    """Exact eigenvalues (and eigenvectors where rational) of a Matrix2."""
    tr, det = m.trace(), m.det()
    disc = tr * tr - 4 * det
    if disc == 0:
        lam = tr / 2
        vec = _eigenvector(m, lam)
        return Eigen2Result((lam,), (2,), (vec if vec else (1, 0),))
    num, den = disc.numerator, disc.denominator
    if num > 0 and math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den:
        root = Fraction(math.isqrt(num), math.isqrt(den))
        lams = sorted(((tr + root) / 2, (tr - root) / 2), reverse=True)
        vecs = tuple(_eigenvector(m, lam) for lam in lams)
        return Eigen2Result(tuple(lams), (1, 1), vecs)
    factor, radicand = _exact_sqrt(abs(disc))
    if disc < 0:
        radicand = -radicand
    q = factor / 2
    return Eigen2Result(
        (Surd(tr / 2, q, radicand), Surd(tr / 2, -q, radicand)),
        (1, 1),
        (None, None),
    )
