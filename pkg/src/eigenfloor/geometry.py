"""Domain catalog: volumes, centroids, and minimal moments of inertia.

Every operator-level bound consumes a domain only through its dimension,
volume |Omega|, and the minimal moment of inertia

    I(Omega) = min_{x0} integral_Omega |x - x0|^2 dx,

attained at the centroid.  The catalog covers boxes, balls, ellipses,
simple polygons, and disjoint unions of boxes; polygons are handled with
Green's theorem so they double as an oracle for the closed forms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

from .minimizer import dimension_constants


class ShapeError(ValueError):
    """Invalid shape data (bad fields, degenerate or self-intersecting geometry)."""


def _positive_tuple(values, what: str) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if not out:
        raise ShapeError(f"{what} must be non-empty")
    for v in out:
        if not (v > 0 and math.isfinite(v)):
            raise ShapeError(f"{what} must be positive and finite, got {v}")
    return out


@dataclass(frozen=True)
class Box:
    """Axis-aligned box with the given side lengths; corner defaults to the origin."""

    sides: tuple[float, ...]
    corner: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "sides", _positive_tuple(self.sides, "box sides"))
        if len(self.sides) < 2:
            raise ShapeError("box needs dimension >= 2")
        corner = self.corner
        if corner is None:
            corner = (0.0,) * len(self.sides)
        corner = tuple(float(v) for v in corner)
        if len(corner) != len(self.sides):
            raise ShapeError(
                f"corner has {len(corner)} coordinates for {len(self.sides)} sides"
            )
        object.__setattr__(self, "corner", corner)


@dataclass(frozen=True)
class Ball:
    """Ball in R^n."""

    n: int
    radius: float
    center: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ShapeError(f"ball dimension must be >= 2, got {self.n}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ShapeError(f"ball radius must be positive, got {self.radius}")
        center = self.center
        if center is None:
            center = (0.0,) * self.n
        center = tuple(float(v) for v in center)
        if len(center) != self.n:
            raise ShapeError(f"center has {len(center)} coordinates for n={self.n}")
        object.__setattr__(self, "center", center)


@dataclass(frozen=True)
class Ellipse2D:
    """Planar ellipse x^2/a^2 + y^2/b^2 <= 1, translated to center."""

    semi_axes: tuple[float, float]
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        axes = _positive_tuple(self.semi_axes, "ellipse semi-axes")
        if len(axes) != 2:
            raise ShapeError(f"ellipse needs exactly 2 semi-axes, got {len(axes)}")
        object.__setattr__(self, "semi_axes", axes)
        center = tuple(float(v) for v in self.center)
        if len(center) != 2:
            raise ShapeError("ellipse center needs exactly 2 coordinates")
        object.__setattr__(self, "center", center)


def _orient(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _segments_cross(a, b, c, d) -> bool:
    """True if closed segments ab and cd intersect."""
    d1 = _orient(c, d, a)
    d2 = _orient(c, d, b)
    d3 = _orient(a, b, c)
    d4 = _orient(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return True

    def on_seg(p, q, r):
        return (
            min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])
        )

    if d1 == 0 and on_seg(c, d, a):
        return True
    if d2 == 0 and on_seg(c, d, b):
        return True
    if d3 == 0 and on_seg(a, b, c):
        return True
    if d4 == 0 and on_seg(a, b, d):
        return True
    return False


@dataclass(frozen=True)
class Polygon2D:
    """Simple planar polygon, vertices in counterclockwise order."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(verts) < 3:
            raise ShapeError(f"polygon needs >= 3 vertices, got {len(verts)}")
        object.__setattr__(self, "vertices", verts)
        k = len(verts)
        for i in range(k):
            if verts[i] == verts[(i + 1) % k]:
                raise ShapeError(f"polygon has a zero-length edge at vertex {i}")
        area2 = sum(
            verts[i][0] * verts[(i + 1) % k][1] - verts[(i + 1) % k][0] * verts[i][1]
            for i in range(k)
        )
        if area2 < 0:
            raise ShapeError("polygon vertices must be in counterclockwise order")
        if area2 <= 1e-300:
            raise ShapeError("polygon is degenerate (zero area)")
        # simplicity: no two non-adjacent edges may touch
        edges = [(verts[i], verts[(i + 1) % k]) for i in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                if j == i + 1 or (i == 0 and j == k - 1):
                    continue
                if _segments_cross(*edges[i], *edges[j]):
                    raise ShapeError(f"polygon edges {i} and {j} intersect")


@dataclass(frozen=True)
class BoxUnion:
    """Union of axis-aligned boxes with pairwise disjoint interiors."""

    boxes: tuple[Box, ...]

    def __post_init__(self):
        boxes = tuple(self.boxes)
        if not boxes:
            raise ShapeError("box union must contain at least one box")
        dims = {len(b.sides) for b in boxes}
        if len(dims) != 1:
            raise ShapeError(f"box union mixes dimensions {sorted(dims)}")
        object.__setattr__(self, "boxes", boxes)
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                if _interiors_overlap(boxes[i], boxes[j]):
                    raise ShapeError(f"boxes {i} and {j} have overlapping interiors")


def _interiors_overlap(a: Box, b: Box) -> bool:
    for lo_a, s_a, lo_b, s_b in zip(a.corner, a.sides, b.corner, b.sides):
        if not (lo_a < lo_b + s_b and lo_b < lo_a + s_a):
            return False
    return True


DomainShape = Union[Box, Ball, Ellipse2D, Polygon2D, BoxUnion]


def dimension(shape: DomainShape) -> int:
    if isinstance(shape, Box):
        return len(shape.sides)
    if isinstance(shape, Ball):
        return shape.n
    if isinstance(shape, (Ellipse2D, Polygon2D)):
        return 2
    if isinstance(shape, BoxUnion):
        return len(shape.boxes[0].sides)
    raise TypeError(f"unknown shape {type(shape).__name__}")


def volume(shape: DomainShape) -> float:
    if isinstance(shape, Box):
        return math.prod(shape.sides)
    if isinstance(shape, Ball):
        return dimension_constants(shape.n).ball_volume * shape.radius**shape.n
    if isinstance(shape, Ellipse2D):
        return math.pi * shape.semi_axes[0] * shape.semi_axes[1]
    if isinstance(shape, Polygon2D):
        area, _, _ = _polygon_area_moments(shape.vertices)
        return area
    if isinstance(shape, BoxUnion):
        return sum(volume(b) for b in shape.boxes)
    raise TypeError(f"unknown shape {type(shape).__name__}")


def centroid(shape: DomainShape) -> tuple[float, ...]:
    if isinstance(shape, Box):
        return tuple(lo + s / 2.0 for lo, s in zip(shape.corner, shape.sides))
    if isinstance(shape, Ball):
        return shape.center
    if isinstance(shape, Ellipse2D):
        return shape.center
    if isinstance(shape, Polygon2D):
        _, cx, cy = _polygon_area_moments(shape.vertices)
        return (cx, cy)
    if isinstance(shape, BoxUnion):
        vols = [volume(b) for b in shape.boxes]
        cents = [centroid(b) for b in shape.boxes]
        total = sum(vols)
        dim = len(cents[0])
        return tuple(
            sum(v * c[i] for v, c in zip(vols, cents)) / total for i in range(dim)
        )
    raise TypeError(f"unknown shape {type(shape).__name__}")


def inertia_min(shape: DomainShape) -> float:
    """Minimal moment of inertia integral |x - centroid|^2 over the shape."""
    if isinstance(shape, Box):
        return math.prod(shape.sides) * sum(s**2 for s in shape.sides) / 12.0
    if isinstance(shape, Ball):
        n = shape.n
        omega = dimension_constants(n).ball_volume
        return n * omega * shape.radius ** (n + 2) / (n + 2.0)
    if isinstance(shape, Ellipse2D):
        a, b = shape.semi_axes
        return math.pi * a * b * (a**2 + b**2) / 4.0
    if isinstance(shape, Polygon2D):
        return _polygon_inertia_min(shape.vertices)
    if isinstance(shape, BoxUnion):
        c = centroid(shape)
        total = 0.0
        for b in shape.boxes:
            cb = centroid(b)
            shift2 = sum((u - v) ** 2 for u, v in zip(cb, c))
            total += inertia_min(b) + volume(b) * shift2
        return total
    raise TypeError(f"unknown shape {type(shape).__name__}")


def _polygon_area_moments(verts) -> tuple[float, float, float]:
    """Area and centroid of a counterclockwise simple polygon (Green's theorem)."""
    area2 = 0.0
    sx = 0.0
    sy = 0.0
    k = len(verts)
    for i in range(k):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % k]
        cross = x0 * y1 - x1 * y0
        area2 += cross
        sx += (x0 + x1) * cross
        sy += (y0 + y1) * cross
    area = area2 / 2.0
    return area, sx / (6.0 * area), sy / (6.0 * area)


def _polygon_inertia_min(verts) -> float:
    area, cx, cy = _polygon_area_moments(verts)
    ixx = 0.0
    iyy = 0.0
    k = len(verts)
    for i in range(k):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % k]
        cross = x0 * y1 - x1 * y0
        iyy += (x0**2 + x0 * x1 + x1**2) * cross
        ixx += (y0**2 + y0 * y1 + y1**2) * cross
    origin_moment = (ixx + iyy) / 12.0
    return origin_moment - area * (cx**2 + cy**2)


@dataclass(frozen=True)
class MomentCheck:
    """Result of the isoperimetric moment inequality I >= rhs(|Omega|, n)."""

    inertia: float
    lower_bound: float
    ok: bool


def check_isoperimetric_moment(shape: DomainShape) -> MomentCheck:
    """Check I(Omega) >= n |Omega|^(1+2/n) / ((n+2) omega_n^(2/n)).

    Equality holds exactly for balls; the check allows 1e-12 relative slack
    so that the equality case passes in floating point.
    """
    n = dimension(shape)
    vol = volume(shape)
    omega = dimension_constants(n).ball_volume
    rhs = n * vol ** (1.0 + 2.0 / n) / ((n + 2.0) * omega ** (2.0 / n))
    lhs = inertia_min(shape)
    return MomentCheck(inertia=lhs, lower_bound=rhs, ok=lhs >= rhs * (1.0 - 1e-12))


def translate(shape: DomainShape, offset) -> DomainShape:
    """Same shape moved by the given vector (all summary quantities invariant)."""
    off = tuple(float(v) for v in offset)
    if len(off) != dimension(shape):
        raise ShapeError(f"offset has {len(off)} coordinates for a {dimension(shape)}-d shape")
    if isinstance(shape, Box):
        return Box(shape.sides, tuple(c + d for c, d in zip(shape.corner, off)))
    if isinstance(shape, Ball):
        return Ball(shape.n, shape.radius, tuple(c + d for c, d in zip(shape.center, off)))
    if isinstance(shape, Ellipse2D):
        return Ellipse2D(shape.semi_axes, (shape.center[0] + off[0], shape.center[1] + off[1]))
    if isinstance(shape, Polygon2D):
        return Polygon2D(tuple((x + off[0], y + off[1]) for x, y in shape.vertices))
    if isinstance(shape, BoxUnion):
        return BoxUnion(tuple(translate(b, off) for b in shape.boxes))
    raise TypeError(f"unknown shape {type(shape).__name__}")


def scale(shape: DomainShape, factor: float) -> DomainShape:
    """Shape dilated by factor > 0 about the origin."""
    if not (factor > 0 and math.isfinite(factor)):
        raise ShapeError(f"scale factor must be positive, got {factor}")
    if isinstance(shape, Box):
        return Box(
            tuple(s * factor for s in shape.sides),
            tuple(c * factor for c in shape.corner),
        )
    if isinstance(shape, Ball):
        return Ball(shape.n, shape.radius * factor, tuple(c * factor for c in shape.center))
    if isinstance(shape, Ellipse2D):
        return Ellipse2D(
            (shape.semi_axes[0] * factor, shape.semi_axes[1] * factor),
            (shape.center[0] * factor, shape.center[1] * factor),
        )
    if isinstance(shape, Polygon2D):
        return Polygon2D(tuple((x * factor, y * factor) for x, y in shape.vertices))
    if isinstance(shape, BoxUnion):
        return BoxUnion(tuple(scale(b, factor) for b in shape.boxes))
    raise TypeError(f"unknown shape {type(shape).__name__}")


_SHAPE_FIELDS = {
    "box": ({"sides"}, {"corner"}),
    "ball": ({"n", "radius"}, {"center"}),
    "ellipse": ({"semi_axes"}, {"center"}),
    "polygon": ({"vertices"}, set()),
    "box_union": ({"boxes"}, set()),
}


def shape_from_dict(doc: dict) -> DomainShape:
    """Build a shape from a plain dict; unknown or missing fields are errors."""
    if not isinstance(doc, dict):
        raise ShapeError(f"shape document must be an object, got {type(doc).__name__}")
    if "type" not in doc:
        raise ShapeError("shape document is missing the 'type' field")
    kind = doc["type"]
    if kind not in _SHAPE_FIELDS:
        raise ShapeError(
            f"unknown shape type {kind!r}; expected one of {sorted(_SHAPE_FIELDS)}"
        )
    required, optional = _SHAPE_FIELDS[kind]
    given = set(doc) - {"type"}
    unknown = given - required - optional
    if unknown:
        raise ShapeError(f"unknown field {sorted(unknown)[0]!r} for shape type {kind!r}")
    missing = required - given
    if missing:
        raise ShapeError(f"missing field {sorted(missing)[0]!r} for shape type {kind!r}")
    try:
        if kind == "box":
            return Box(doc["sides"], doc.get("corner"))
        if kind == "ball":
            return Ball(int(doc["n"]), float(doc["radius"]), doc.get("center"))
        if kind == "ellipse":
            return Ellipse2D(tuple(doc["semi_axes"]), tuple(doc.get("center", (0.0, 0.0))))
        if kind == "polygon":
            return Polygon2D(tuple(tuple(v) for v in doc["vertices"]))
        boxes = []
        for i, sub in enumerate(doc["boxes"]):
            if not isinstance(sub, dict):
                raise ShapeError(f"box {i} in box_union must be an object")
            extra = set(sub) - {"sides", "corner"}
            if extra:
                raise ShapeError(f"unknown field {sorted(extra)[0]!r} in box {i} of box_union")
            if "sides" not in sub:
                raise ShapeError(f"missing field 'sides' in box {i} of box_union")
            boxes.append(Box(sub["sides"], sub.get("corner")))
        return BoxUnion(tuple(boxes))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ShapeError):
            raise
        raise ShapeError(f"malformed {kind} document: {exc}") from exc


def load_shape(path: str) -> DomainShape:
    """Read a JSON shape document from disk."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ShapeError(f"cannot read shape file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ShapeError(f"shape file {path} is not valid JSON: {exc}") from exc
    return shape_from_dict(doc)
