"""Machine checks of the structural properties of the bundled map.

Every check works on exact rational geometry: region identities are
asserted through symmetric-difference areas, matrices through equality,
spectra through the exact eigensolver.  Each `verify_*` operation
returns a `PropertyReport` whose witnesses pin the claim to concrete
polygons, points and matrices, so a failure is always reproducible from
the report alone.  The one deliberately non-exact check — convergence
of sampled orbits toward the top vertex — is labelled "empirical" in
its report.

`verify_map` runs the whole battery and returns the reports sorted by
their (stable) ids; `serialize_reports` renders them as deterministic
key-value text.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .geometry import (
    ConvexPolygon,
    Matrix2,
    Point,
    eigen2,
    format_rational,
    intersection_area,
    region_area,
    region_difference,
    symdiff_area,
    _primitive_direction,
)
from .mapmodel import PiecewiseAffineMap, standard_map

__all__ = [
    "VerifierError",
    "ZeroUpperLeftEntry",
    "AttractionBudgetExceeded",
    "ConeSpec",
    "ConeCertificate",
    "PropertyReport",
    "cone_certificate",
    "verify_fixed_points",
    "verify_top_attraction",
    "verify_markov",
    "verify_y_factors",
    "verify_cone_stability",
    "verify_horizontal_expansion",
    "verify_preimage_NEW",
    "verify_folding",
    "verify_left_right",
    "analyze_WAS",
    "verify_map",
    "serialize_reports",
    "TABLE_PIECES",
]


class VerifierError(Exception):
    """Base class for verifier failures that are not check outcomes."""


class ZeroUpperLeftEntry(VerifierError):
    """Cone certificate undefined: the matrix kills the horizontal."""


class AttractionBudgetExceeded(VerifierError):
    """A sampled orbit failed to approach N within the iteration budget."""


# the four distinguished pieces whose matrices drive properties 3-7,
# in fixed reporting order
TABLE_PIECES = ("A^cB^cS", "A^tB^tA^c", "A^cB^tB^c", "C^cD^cS")

# expected cone data for those pieces (gamma1, gamma2) at C = 2
_EXPECTED_GAMMAS = {
    "A^cB^cS": (Fraction(0), Fraction(21, 40)),
    "A^tB^tA^c": (Fraction(0), Fraction(11, 20)),
    "A^cB^tB^c": (Fraction(0), Fraction(33, 40)),
    "C^cD^cS": (Fraction(0), Fraction(21, 40)),
}


@dataclass(frozen=True)
class ConeSpec:
    """The vertical cone |x| <= C * |y| of tangent directions."""

    bound: Fraction = Fraction(2)

    def __post_init__(self):
        if self.bound <= 0:
            raise ValueError("cone bound must be positive")


@dataclass(frozen=True)
class ConeCertificate:
    """Sufficient-condition data for invariance of a vertical cone.

    gamma2 is None when the denominator |a| - C|c| is nonpositive, in
    which case the certificate cannot hold.
    """

    gamma1: Fraction
    gamma2: Optional[Fraction]
    holds: bool


def cone_certificate(m: Matrix2, cone: ConeSpec = ConeSpec()) -> ConeCertificate:
    """Exact invariance certificate for the cone |x| <= C|y| under m.

    The inverse of m maps the cone into itself whenever
    gamma1 = C|c/a| < 1 and gamma2 = (|d| + |b|/C) / (|a| - C|c|) <= 1.
    """
    if m.a == 0:
        raise ZeroUpperLeftEntry("certificate needs a nonzero upper-left entry")
    c = cone.bound
    gamma1 = c * abs(m.c / m.a)
    denominator = abs(m.a) - c * abs(m.c)
    if denominator <= 0:
        return ConeCertificate(gamma1, None, False)
    gamma2 = (abs(m.d) + abs(m.b) / c) / denominator
    return ConeCertificate(gamma1, gamma2, gamma1 < 1 and gamma2 <= 1)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one verified property, with exact witnesses."""

    property_id: str
    title: str
    status: str  # "pass" | "fail" | "pass-with-deviation"
    witnesses: Tuple[str, ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status != "fail"


class _Check:
    """Accumulates witness lines and an overall verdict."""

    def __init__(self):
        self.witnesses: List[str] = []
        self.notes: List[str] = []
        self.failed = False
        self.deviated = False

    def expect(self, ok: bool, witness: str, counterexample: str = ""):
        if ok:
            self.witnesses.append(witness)
        else:
            self.failed = True
            suffix = f" [{counterexample}]" if counterexample else ""
            self.witnesses.append(f"FAIL: {witness}{suffix}")

    def info(self, witness: str):
        self.witnesses.append(witness)

    def note(self, text: str):
        self.notes.append(text)

    def report(self, property_id: str, title: str) -> PropertyReport:
        if self.failed:
            status = "fail"
        elif self.deviated:
            status = "pass-with-deviation"
        else:
            status = "pass"
        return PropertyReport(
            property_id, title, status, tuple(self.witnesses), tuple(self.notes)
        )


def _decimal(value: Fraction) -> str:
    """Exact decimal string for fractions with 2- and 5-smooth
    denominators; anything else falls back to p/q."""
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return format_rational(value)
    k = max(twos, fives)
    if k == 0:
        return str(value.numerator)
    digits = str(abs(int(value * 10**k))).rjust(k + 1, "0")
    sign = "-" if value < 0 else ""
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def _contained(
    parts: Sequence[ConvexPolygon], cover: Sequence[ConvexPolygon]
) -> bool:
    """union(parts) ⊆ union(cover), up to measure zero."""
    return intersection_area(parts, cover) == region_area(parts)


def _poly_str(poly: ConvexPolygon) -> str:
    return " ".join(str(v) for v in poly.vertices)


def _table_pieces(t: PiecewiseAffineMap):
    return [(label, t.piece_with_corners(label)) for label in TABLE_PIECES]


# ---------------------------------------------------------------------------
# the ten checks


def verify_fixed_points(t: PiecewiseAffineMap) -> PropertyReport:
    """N and S are fixed, and the whole segment from W^c to S is fixed."""
    chk = _Check()
    for name in ("N", "S"):
        p = t.vertices[name]
        chk.expect(t.evaluate(p) == p, f"T({name}) = {name} = {p}")
    w_c, s = t.vertices["W^c"], t.vertices["S"]
    samples = [
        Point(w_c.x * Fraction(i, 7), w_c.y * Fraction(i, 7)) for i in range(8)
    ]
    fixed = [p for p in samples if t.evaluate(p) == p]
    chk.expect(
        len(fixed) == len(samples),
        f"all {len(samples)} equally spaced samples of [W^c S] are fixed",
        f"moved: {[str(p) for p in samples if t.evaluate(p) != p]}",
    )
    chk.info(f"sample endpoints: {samples[0]} and {samples[-1]}")
    return chk.report("01-fixed-points", "poles and the fixed segment")


def _iterate_to_pole(
    t: PiecewiseAffineMap, p: Point, tol: Fraction, budget: int
) -> int:
    pole = t.vertices["N"]
    q = p
    for step in range(budget + 1):
        if max(abs(q.x - pole.x), abs(q.y - pole.y)) < tol:
            return step
        q = t.evaluate(q)
    raise AttractionBudgetExceeded(str(p))


def verify_top_attraction(t: PiecewiseAffineMap) -> PropertyReport:
    """The top triangle is forward invariant and its orbits approach N."""
    chk = _Check()
    top = t.region("NWE")
    base_images_up = True
    for name in "WABOCDE":
        image = t.evaluate(t.vertices[name])
        if image.y != Fraction(3, 2):
            base_images_up = False
    chk.expect(
        base_images_up,
        "every vertex of the base row maps onto the line y = 3/2 (above y = 1)",
    )
    n, w = t.vertices["N"], t.vertices["W"]
    w_img = t.evaluate(w)
    on_nw = (w.x - n.x) * (w_img.y - n.y) == (w_img.x - n.x) * (w.y - n.y)
    chk.expect(on_nw, f"T(W) = {w_img} lies on the edge [N W]")
    chk.expect(
        _contained(t.region_image(top), [top]),
        "T(NWE) ⊆ NWE (forward invariance, exact)",
    )

    tol = Fraction(1, 10**6)
    budget = 500
    worst = 0
    tried = 0
    witness_fail = None
    for i in range(20):
        for j in range(20):
            p = Point(Fraction(-3, 2) + Fraction(3 * i, 19), 1 + Fraction(j, 19))
            if not top.contains(p):
                continue
            tried += 1
            try:
                worst = max(worst, _iterate_to_pole(t, p, tol, budget))
            except AttractionBudgetExceeded:
                witness_fail = p
    if witness_fail is not None:
        chk.expect(False, "sampled orbits reach N", f"stalled at {witness_fail}")
    else:
        chk.expect(
            True,
            f"all {tried} grid samples of NWE come within 10^-6 of N "
            f"(worst case {worst} steps, budget {budget})",
        )
    chk.note(
        "attraction is checked empirically: forward invariance is exact, "
        "convergence is sampled on a rational grid with a step budget"
    )
    return chk.report("02-top-attraction", "absorption into the top triangle")


def verify_markov(t: PiecewiseAffineMap) -> PropertyReport:
    """Both coding triangles map exactly onto the triangle A D S."""
    chk = _Check()
    big = t.region("ADS")
    chk.expect(big.area == 1, f"area(ADS) = {format_rational(big.area)}")
    for label in ("A^tB^tS", "C^cD^cS"):
        diff = symdiff_area(t.region_image(t.region(label)), [big])
        chk.expect(
            diff == 0,
            f"T({label}) = ADS exactly (symmetric difference 0)",
            f"symdiff area {format_rational(diff)}",
        )
    return chk.report("03-markov", "coding triangles cover ADS exactly")


def verify_y_factors(t: PiecewiseAffineMap) -> PropertyReport:
    """Vertical scaling factors of the pieces inside the left coding
    triangle, and the exact factor 2 on the right one."""
    chk = _Check()
    region = t.region("A^tB^tS")
    inside = [
        p
        for p in t.pieces
        if intersection_area([p.domain], [region]) == p.domain.area
    ]
    chk.expect(
        len(inside) == 3,
        f"A^tB^tS is tiled by {len(inside)} pieces: "
        + ", ".join(p.name for p in inside),
    )
    for piece in inside:
        m = piece.map.linear
        ok = m.c == 0 and Fraction(1, 2) <= m.d <= Fraction(5, 2)
        chk.expect(
            ok,
            f"{piece.name}: bottom row (0, {format_rational(m.d)}), "
            f"1/2 <= factor <= 5/2",
            f"bottom row ({format_rational(m.c)}, {format_rational(m.d)})",
        )
    low = t.piece_with_corners("A^cB^cS").map.linear
    chk.expect(low.d == Fraction(1, 2), "A^cB^cS contracts y exactly by 1/2")
    right = t.piece_with_corners("C^cD^cS").map.linear
    chk.expect(
        (right.c, right.d) == (0, 2), "C^cD^cS bottom row is exactly (0, 2)"
    )
    chk.note(
        "the two upper pieces expand y by 5/2 even though the informal "
        "one-line description of this property says y shrinks by a factor "
        "of at most 2; both the per-piece factors and that description are "
        "recorded here without reconciling them"
    )
    return chk.report("04-y-factors", "vertical factors on the coding pieces")


def verify_cone_stability(t: PiecewiseAffineMap) -> PropertyReport:
    """The vertical cone |x| <= 2|y| is stable for all coding matrices,
    singly and under every ordered product."""
    chk = _Check()
    cone = ConeSpec(Fraction(2))
    mats = []
    for label, piece in _table_pieces(t):
        m = piece.map.linear
        mats.append(m)
        cert = cone_certificate(m, cone)
        want1, want2 = _EXPECTED_GAMMAS[label]
        ok = cert.holds and cert.gamma1 == want1 and cert.gamma2 == want2
        gamma2 = "-" if cert.gamma2 is None else _decimal(cert.gamma2)
        chk.expect(
            ok,
            f"{label}: gamma = {_decimal(cert.gamma1)}, {gamma2}",
            f"expected {_decimal(want1)}, {_decimal(want2)}",
        )
    products_ok = 0
    first_bad = None
    for m1 in mats:
        for m2 in mats:
            if cone_certificate(m1 @ m2, cone).holds:
                products_ok += 1
            elif first_bad is None:
                first_bad = (m1, m2)
    chk.expect(
        products_ok == len(mats) ** 2,
        f"closure under composition: all {len(mats) ** 2} ordered products "
        f"keep the cone",
        f"first failing product {first_bad}",
    )
    return chk.report("05-cone-stability", "stability of the vertical cone")


def verify_horizontal_expansion(t: PiecewiseAffineMap) -> PropertyReport:
    """Coding matrices preserve the horizontal and expand it by >= 4."""
    chk = _Check()
    for label, piece in _table_pieces(t):
        m = piece.map.linear
        chk.expect(
            m.c == 0 and abs(m.a) >= 4,
            f"{label}: horizontal preserved (c = 0), |a| = "
            f"{format_rational(abs(m.a))} >= 4",
            f"matrix {m}",
        )
    return chk.report("06-horizontal-expansion", "horizontal expansion by >= 4")


def _preimage_parts(t: PiecewiseAffineMap):
    """Preimage of the top triangle, its three predicted components, and
    the residual pieces left over after removing them."""
    top = t.region("NEW")
    preimage = t.region_preimage(top)
    predicted = [t.region("NWE"), t.region("WW^tO^tO"), t.region("C^cE^cEC")]
    residual = region_difference(preimage, predicted)
    return top, preimage, predicted, residual


def verify_preimage_NEW(t: PiecewiseAffineMap) -> PropertyReport:
    """T^{-1}(NEW) decomposes into the three predicted regions plus a
    residual confined to the central quadrilateral O O^c C^c C."""
    chk = _Check()
    top, preimage, predicted, residual = _preimage_parts(t)
    for label, region in zip(("NWE", "WW^tO^tO", "C^cE^cEC"), predicted):
        chk.expect(
            _contained([region], preimage),
            f"{label} ⊆ T⁻¹(NEW)",
        )
    central = t.region("OO^cC^cC")
    chk.expect(
        _contained(residual, [central]),
        "residual Δ := T⁻¹(NEW) minus the three regions lies in OO^cC^cC",
        f"residual area {format_rational(region_area(residual))}",
    )
    left_coding = t.piece_with_corners("A^cB^cS").domain
    chk.expect(
        intersection_area(preimage, [left_coding]) == 0,
        "T⁻¹(NEW) misses the piece A^cB^cS entirely",
    )
    images = [img for frag in residual for img in t.region_image(frag)]
    chk.expect(
        _contained(images, [top]),
        "T(Δ) ⊆ NEW (points of Δ arrive in the top triangle in one step)",
    )
    chk.info(f"area(T⁻¹(NEW)) = {format_rational(region_area(preimage))}")
    chk.info(f"area(Δ) = {format_rational(region_area(residual))}")
    for frag in residual:
        chk.info(f"Δ fragment: {_poly_str(frag)}")
    return chk.report("07-preimage-new", "preimage of the top triangle")


def verify_folding(t: PiecewiseAffineMap) -> PropertyReport:
    """The two central bottom sectors fold into the right half plus the
    top triangle."""
    chk = _Check()
    top, _, _, residual = _preimage_parts(t)
    right_half = t.region("DES")
    for label in ("BOS", "OSC"):
        image = t.region_image(t.region(label))
        strict = _contained(image, [right_half, top])
        with_residual = strict or _contained(image, [right_half, top] + residual)
        chk.expect(
            with_residual,
            f"T({label}) ⊆ DES ∪ NEW" + ("" if strict else " ∪ Δ"),
        )
        if strict and label == "OSC":
            chk.note(
                "the Δ allowance for OSC is not needed: its image already "
                "fits in DES ∪ NEW"
            )
    images = [img for frag in residual for img in t.region_image(frag)]
    chk.expect(_contained(images, [top]), "T(Δ) ⊆ NEW")
    return chk.report("08-folding", "central sectors fold to the right")


def verify_left_right(t: PiecewiseAffineMap) -> PropertyReport:
    """Both halves hand their points to the left half or the top, and the
    small left triangle W^cA^cS is invariant."""
    chk = _Check()
    cover = [t.region("WAS"), t.region("NEW")]
    for label in ("DES", "WAS"):
        chk.expect(
            _contained(t.region_image(t.region(label)), cover),
            f"T({label}) ⊆ WAS ∪ NEW",
        )
    small = t.region("W^cA^cS")
    chk.expect(
        _contained(t.region_image(small), [small]),
        "T(W^cA^cS) ⊆ W^cA^cS",
    )
    return chk.report("09-left-right", "hand-off between the two halves")


def analyze_WAS(t: PiecewiseAffineMap) -> PropertyReport:
    """Spectral picture on the left-half pieces: expansion, the neutral
    direction, the pointwise-fixed segment, and the two pieces swallowed
    by the top triangle."""
    chk = _Check()

    expanding = t.piece_with_corners("W^tW^cA^t")
    eig = eigen2(expanding.map.linear)
    values = ", ".join(format_rational(v) for v in eig.eigenvalues)
    chk.expect(
        set(eig.eigenvalues) == {Fraction(5, 3), Fraction(5, 4)},
        f"{expanding.name}: eigenvalues {values}, both > 1 (expanding)",
        f"matrix {expanding.map.linear}",
    )

    neutral = t.piece_with_corners("W^cA^cA^t")
    eig = eigen2(neutral.map.linear)
    values = ", ".join(format_rational(v) for v in eig.eigenvalues)
    pairs = dict(eig.rational_pairs())
    chk.expect(
        set(eig.eigenvalues) == {Fraction(5, 2), Fraction(1)}
        and pairs.get(Fraction(1)) == (1, 2),
        f"{neutral.name}: eigenvalues {values}; eigenvector (1, 2) for 1",
        f"matrix {neutral.map.linear}, pairs {pairs}",
    )

    segment_piece = t.piece_with_corners("W^cA^cS")
    eig = eigen2(segment_piece.map.linear)
    pairs = dict(eig.rational_pairs())
    w_c = t.vertices["W^c"]
    along = _primitive_direction(w_c.x, w_c.y)
    a_c = t.vertices["A^c"]
    transverse = _primitive_direction(a_c.x, a_c.y)
    ok = (
        pairs.get(Fraction(1)) == along
        and Fraction(1, 2) in pairs
        and abs(Fraction(1, 2)) < 1
        and pairs[Fraction(1, 2)] == transverse
    )
    chk.expect(
        ok,
        f"{segment_piece.name}: eigenvalue 1 along [W^c S] (direction "
        f"{along}), transverse eigenvalue 1/2 with direction {transverse}",
        f"pairs {pairs}",
    )
    midpoint = Point(w_c.x / 2, w_c.y / 2)
    chk.expect(
        t.evaluate(midpoint) == midpoint,
        f"midpoint of [W^c S] = {midpoint} is fixed",
    )

    _, preimage, _, _ = _preimage_parts(t)
    pocket = t.region("WW^tA^tA")
    swallowed = [
        p
        for p in t.pieces
        if intersection_area([p.domain], [pocket]) == p.domain.area
    ]
    names = ", ".join(p.name for p in swallowed)
    chk.expect(
        len(swallowed) == 2,
        f"the pocket W W^t A^t A splits into 2 pieces: {names}",
    )
    for piece in swallowed:
        chk.expect(
            _contained([piece.domain], preimage),
            f"{piece.name} ⊆ T⁻¹(NEW) (leaves for the top in one step)",
        )
    return chk.report("10-was-analysis", "spectral analysis on the left half")


_VERIFIERS: Tuple[Tuple[str, Callable], ...] = (
    ("01-fixed-points", verify_fixed_points),
    ("02-top-attraction", verify_top_attraction),
    ("03-markov", verify_markov),
    ("04-y-factors", verify_y_factors),
    ("05-cone-stability", verify_cone_stability),
    ("06-horizontal-expansion", verify_horizontal_expansion),
    ("07-preimage-new", verify_preimage_NEW),
    ("08-folding", verify_folding),
    ("09-left-right", verify_left_right),
    ("10-was-analysis", analyze_WAS),
)


def verify_map(t: Optional[PiecewiseAffineMap] = None) -> List[PropertyReport]:
    """Run every check against `t` (default: the bundled map)."""
    if t is None:
        t = standard_map()
    return sorted(
        (fn(t) for _, fn in _VERIFIERS), key=lambda r: r.property_id
    )


def serialize_reports(reports: Sequence[PropertyReport]) -> str:
    """Deterministic key-value rendering of a report list."""
    blocks = []
    for r in reports:
        lines = [
            f"property: {r.property_id}",
            f"title: {r.title}",
            f"status: {r.status}",
        ]
        lines.extend(f"witness: {w}" for w in r.witnesses)
        lines.extend(f"note: {n}" for n in r.notes)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
