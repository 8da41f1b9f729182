from minpart.errors import BadPolygon, ConfigError, GeometryError

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, Self
import numpy as np
import json
import math

type Point = tuple[float, float]

class Shape(StrEnum):
    """An enum listing the supported domain shapes."""
    UNIT_SQUARE = "unit_square"
    RECTANGLE = "rectangle"
    DISK = "disk"
    REGULAR_POLYGON = "regular_polygon"
    POLYGON = "polygon"

@dataclass(frozen=True)
class DomainSpec:
    """A bounded planar domain ``Ω``.

    Placement of the shapes:
    - ``unit_square``: ``(0,1)²``.
    - ``rectangle``: ``(0,width)×(0,height)``.
    - ``disk``: centered at the origin.
    - ``regular_polygon``: centered at the origin with a horizontal bottom edge.
    - ``polygon``: the given vertices, stored counterclockwise and without the closing duplicate.

    Use the class methods to build one, or ``from_dict``/``parse`` for configuration input.
    """
    shape: Shape = Shape.UNIT_SQUARE
    width: float = 1.0
    height: float = 1.0
    radius: float = 1.0
    sides: int = 0
    polygon_area: float = 0.0
    vertices: tuple[Point, ...] = field(default=())

    def __post_init__(self) -> None:
        match self.shape:
            case Shape.UNIT_SQUARE:
                object.__setattr__(self, "width", 1.0)
                object.__setattr__(self, "height", 1.0)
            case Shape.RECTANGLE:
                if not (self.width > 0 and self.height > 0 and math.isfinite(self.width * self.height)):
                    raise GeometryError(f"Rectangle sides should be positive and finite.\n"
                                        + f"They were {self.width} x {self.height}")
            case Shape.DISK:
                if not (self.radius > 0 and math.isfinite(self.radius)):
                    raise GeometryError(f"Disk radius should be positive and finite.\n"
                                        + f"It was {self.radius}")
            case Shape.REGULAR_POLYGON:
                if self.sides < 3:
                    raise BadPolygon(f"A regular polygon needs at least 3 sides.\n"
                                     + f"It had {self.sides}")
                if not (self.polygon_area > 0 and math.isfinite(self.polygon_area)):
                    raise GeometryError(f"Regular polygon area should be positive and finite.\n"
                                        + f"It was {self.polygon_area}")
                object.__setattr__(self, "vertices", _regular_polygon_vertices(self.sides, self.polygon_area))
            case Shape.POLYGON:
                object.__setattr__(self, "vertices", _normalize_polygon(self.vertices))

    @classmethod
    def unit_square(cls) -> Self:
        return cls(Shape.UNIT_SQUARE)

    @classmethod
    def rectangle(cls, width: float, height: float) -> Self:
        return cls(Shape.RECTANGLE, width=float(width), height=float(height))

    @classmethod
    def disk(cls, radius: float = 1.0) -> Self:
        return cls(Shape.DISK, radius=float(radius))

    @classmethod
    def regular_polygon(cls, sides: int, area: float = 1.0) -> Self:
        return cls(Shape.REGULAR_POLYGON, sides=int(sides), polygon_area=float(area))

    @classmethod
    def polygon(cls, vertices: list[Point] | tuple[Point, ...]) -> Self:
        return cls(Shape.POLYGON, vertices=tuple((float(x), float(y)) for x, y in vertices))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Self:
        """Build a ``DomainSpec`` from its JSON form, e.g. ``{"shape": "disk", "radius": 1}``."""
        try:
            match data:
                case {"shape": "unit_square"}:
                    return cls.unit_square()
                case {"shape": "rectangle", "width": width, "height": height}:
                    return cls.rectangle(width, height)
                case {"shape": "disk", "radius": radius}:
                    return cls.disk(radius)
                case {"shape": "disk"}:
                    return cls.disk()
                case {"shape": "regular_polygon", "sides": sides, "area": area}:
                    return cls.regular_polygon(sides, area)
                case {"shape": "regular_polygon", "sides": sides}:
                    return cls.regular_polygon(sides)
                case {"shape": "polygon", "vertices": list(vertices)}:
                    return cls.polygon([(x, y) for x, y in vertices])
        except (TypeError, ValueError) as error:
            if isinstance(error, GeometryError):
                raise
            raise ConfigError(f"Domain specification could not be read.\n"
                              + f"It was {data}") from error
        raise ConfigError(f"Unknown or incomplete domain specification.\n"
                          + f"It was {data}")

    @classmethod
    def parse(cls, text: str) -> Self:
        """Build a ``DomainSpec`` from a shape name or a JSON object.

        Accepted names: ``unit_square``, ``disk`` (radius 1), ``hexagon`` (regular, area 1).
        """
        text = text.strip()
        if text.startswith("{"):
            try:
                data: Any = json.loads(text)
            except json.JSONDecodeError as error:
                raise ConfigError(f"Domain JSON could not be parsed.\n"
                                  + f"It was {text}") from error
            if not isinstance(data, dict):
                raise ConfigError(f"Domain JSON should be an object.\n"
                                  + f"It was {text}")
            return cls.from_dict(data)
        match text.casefold():
            case "unit_square" | "square":
                return cls.unit_square()
            case "disk":
                return cls.disk()
            case "hexagon":
                return cls.regular_polygon(6, 1.0)
            case _:
                raise ConfigError(f"Unknown domain name.\n"
                                  + f"It was {text}")

    def to_dict(self) -> dict[str, Any]:
        match self.shape:
            case Shape.UNIT_SQUARE:
                return {"shape": str(self.shape)}
            case Shape.RECTANGLE:
                return {"shape": str(self.shape), "width": self.width, "height": self.height}
            case Shape.DISK:
                return {"shape": str(self.shape), "radius": self.radius}
            case Shape.REGULAR_POLYGON:
                return {"shape": str(self.shape), "sides": self.sides, "area": self.polygon_area}
            case _:
                return {"shape": str(self.shape), "vertices": [list(v) for v in self.vertices]}

    @property
    def identifier(self) -> str:
        """A short human readable id, used as operator metadata."""
        match self.shape:
            case Shape.UNIT_SQUARE:
                return "unit_square"
            case Shape.RECTANGLE:
                return f"rectangle({self.width:g},{self.height:g})"
            case Shape.DISK:
                return f"disk({self.radius:g})"
            case Shape.REGULAR_POLYGON:
                return f"regular_polygon({self.sides},{self.polygon_area:g})"
            case _:
                return f"polygon({len(self.vertices)})"

    @property
    def is_polygonal(self) -> bool:
        return self.shape in (Shape.REGULAR_POLYGON, Shape.POLYGON)

    @property
    def area(self) -> float:
        """Return ``A(Ω)``."""
        match self.shape:
            case Shape.UNIT_SQUARE | Shape.RECTANGLE:
                return self.width * self.height
            case Shape.DISK:
                return math.pi * self.radius * self.radius
            case Shape.REGULAR_POLYGON:
                return self.polygon_area
            case _:
                return _shoelace(self.vertex_array())

    @property
    def perimeter(self) -> float:
        match self.shape:
            case Shape.UNIT_SQUARE | Shape.RECTANGLE:
                return 2.0 * (self.width + self.height)
            case Shape.DISK:
                return 2.0 * math.pi * self.radius
            case _:
                vertices: np.ndarray = self.vertex_array()
                return float(np.linalg.norm(np.roll(vertices, -1, axis=0) - vertices, axis=1).sum())

    def bounding_box(self) -> tuple[float, float, float, float]:
        """Return ``(xmin, ymin, xmax, ymax)``."""
        match self.shape:
            case Shape.UNIT_SQUARE | Shape.RECTANGLE:
                return (0.0, 0.0, self.width, self.height)
            case Shape.DISK:
                return (-self.radius, -self.radius, self.radius, self.radius)
            case _:
                vertices: np.ndarray = self.vertex_array()
                return (float(vertices[:, 0].min()), float(vertices[:, 1].min()),
                        float(vertices[:, 0].max()), float(vertices[:, 1].max()))

    @property
    def diameter(self) -> float:
        match self.shape:
            case Shape.UNIT_SQUARE | Shape.RECTANGLE:
                return math.hypot(self.width, self.height)
            case Shape.DISK:
                return 2.0 * self.radius
            case _:
                vertices: np.ndarray = self.vertex_array()
                differences: np.ndarray = vertices[:, None, :] - vertices[None, :, :]
                return float(np.sqrt((differences ** 2).sum(axis=-1)).max())

    def vertex_array(self) -> np.ndarray:
        """Return the counterclockwise vertices as a ``(V, 2)`` array (polygonal shapes only)."""
        if not self.is_polygonal:
            raise GeometryError(f"{self.identifier} has no vertex list")
        return np.asarray(self.vertices, dtype=float)

    def inside_distance(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Return the distance of each point to the complement of ``Ω``.

        Points outside ``Ω`` get a negative value.
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        match self.shape:
            case Shape.UNIT_SQUARE | Shape.RECTANGLE:
                return np.minimum(np.minimum(x, self.width - x), np.minimum(y, self.height - y))
            case Shape.DISK:
                return self.radius - np.hypot(x, y)
            case _:
                vertices: np.ndarray = self.vertex_array()
                distance: np.ndarray = _distance_to_edges(vertices, x, y)
                return np.where(_crossing_inside(vertices, x, y), distance, -distance)

    def square_inside(self, x0: float, y0: float, side: float, tol: float = 1e-12) -> bool:
        """Return ``True`` if the closed square ``[x0, x0+side]×[y0, y0+side]`` lies in the closure of ``Ω``."""
        match self.shape:
            case Shape.UNIT_SQUARE | Shape.RECTANGLE:
                return (x0 >= -tol and y0 >= -tol and
                        x0 + side <= self.width + tol and y0 + side <= self.height + tol)
            case Shape.DISK:
                far_x: float = max(abs(x0), abs(x0 + side))
                far_y: float = max(abs(y0), abs(y0 + side))
                return math.hypot(far_x, far_y) <= self.radius + tol
            case _:
                center: np.ndarray = self.inside_distance(np.array([x0 + side / 2]), np.array([y0 + side / 2]))
                if center[0] <= 0:
                    return False
                vertices: np.ndarray = self.vertex_array()
                box: tuple[float, float, float, float] = (x0 + tol, y0 + tol, x0 + side - tol, y0 + side - tol)
                return not any(_segment_crosses_box(vertices[i], vertices[(i + 1) % len(vertices)], box)
                               for i in range(len(vertices)))


def _regular_polygon_vertices(sides: int, area: float) -> tuple[Point, ...]:
    """Vertices of the regular polygon of given area centered at the origin, bottom edge horizontal."""
    circumradius: float = math.sqrt(2.0 * area / (sides * math.sin(2.0 * math.pi / sides)))
    angles: np.ndarray = -math.pi / 2 - math.pi / sides + 2.0 * math.pi * np.arange(sides) / sides
    return tuple((float(circumradius * math.cos(a)), float(circumradius * math.sin(a))) for a in angles)


def _shoelace(vertices: np.ndarray) -> float:
    """Signed area, positive for counterclockwise vertices."""
    x: np.ndarray = vertices[:, 0]
    y: np.ndarray = vertices[:, 1]
    return float(0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def _orientation(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Closed segment intersection by orientation predicates."""
    d1: float = _orientation(q1, q2, p1)
    d2: float = _orientation(q1, q2, p2)
    d3: float = _orientation(p1, p2, q1)
    d4: float = _orientation(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return ((d1 == 0 and _on_segment(q1, q2, p1)) or
            (d2 == 0 and _on_segment(q1, q2, p2)) or
            (d3 == 0 and _on_segment(p1, p2, q1)) or
            (d4 == 0 and _on_segment(p1, p2, q2)))


def _normalize_polygon(vertices: tuple[Point, ...]) -> tuple[Point, ...]:
    """Validate a vertex list and return it counterclockwise, without closing duplicate.

    Raise ``BadPolygon`` if it is not a simple polygon of positive area.
    """
    points: list[Point] = [(float(x), float(y)) for x, y in vertices]
    if len(points) > 1 and points[0] == points[-1]:
        points.pop()
    if len(points) < 3:
        raise BadPolygon(f"A polygon needs at least 3 distinct vertices.\n"
                         + f"It had {len(points)}")
    if not all(math.isfinite(x) and math.isfinite(y) for x, y in points):
        raise BadPolygon("Polygon vertices should be finite")
    count: int = len(points)
    for i in range(count):
        for j in range(i + 1, count):
            if j == i + 1 or (i == 0 and j == count - 1):
                if points[i] == points[j]:
                    raise BadPolygon(f"Polygon has a repeated vertex {points[i]}")
                continue
            if _segments_intersect(points[i], points[(i + 1) % count], points[j], points[(j + 1) % count]):
                raise BadPolygon(f"Polygon is self-intersecting.\n"
                                 + f"Edges {i} and {j} meet")
    signed_area: float = _shoelace(np.asarray(points))
    if signed_area == 0.0:
        raise BadPolygon("Polygon has zero area")
    if signed_area < 0:
        points.reverse()
    return tuple(points)


def _crossing_inside(vertices: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Even-odd membership of the points."""
    inside: np.ndarray = np.zeros(np.broadcast(x, y).shape, dtype=bool)
    count: int = len(vertices)
    for i in range(count):
        ax, ay = vertices[i]
        bx, by = vertices[(i + 1) % count]
        straddles: np.ndarray = (ay > y) != (by > y)
        if ay == by:
            continue
        x_cross: np.ndarray = ax + (y - ay) * (bx - ax) / (by - ay)
        inside ^= straddles & (x < x_cross)
    return inside


def _distance_to_edges(vertices: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Euclidean distance of the points to the polygon boundary."""
    distance: np.ndarray = np.full(np.broadcast(x, y).shape, np.inf)
    count: int = len(vertices)
    for i in range(count):
        ax, ay = vertices[i]
        bx, by = vertices[(i + 1) % count]
        dx: float = bx - ax
        dy: float = by - ay
        t: np.ndarray = np.clip(((x - ax) * dx + (y - ay) * dy) / (dx * dx + dy * dy), 0.0, 1.0)
        distance = np.minimum(distance, np.hypot(x - (ax + t * dx), y - (ay + t * dy)))
    return distance


def _segment_crosses_box(a: np.ndarray, b: np.ndarray, box: tuple[float, float, float, float]) -> bool:
    """Liang-Barsky clipping: ``True`` if a piece of positive length of ``ab`` lies in the box."""
    xmin, ymin, xmax, ymax = box
    if xmin >= xmax or ymin >= ymax:
        return False
    dx: float = float(b[0] - a[0])
    dy: float = float(b[1] - a[1])
    t0: float = 0.0
    t1: float = 1.0
    for p, q in ((-dx, a[0] - xmin), (dx, xmax - a[0]), (-dy, a[1] - ymin), (dy, ymax - a[1])):
        if p == 0:
            if q < 0:
                return False
            continue
        t: float = float(q / p)
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    return t0 < t1
