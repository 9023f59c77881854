"""Approximate fixed points of continuous self-maps of the simplex via Sperner labelings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import InputError, MapRangeError
from .sperner import KUHN_LIMITS, Labeling, Triangulation, find_panchromatic_path, kuhn_triangulation

RANGE_TOL = 1e-9
LABEL_TOL = 1e-12

Point = tuple[float, ...]


@dataclass(frozen=True)
class SimplexMap:
    dim: int
    evaluator: Callable[[Point], Sequence[float]]
    description: str = ""

    def __call__(self, x: Point) -> Point:
        y = tuple(float(c) for c in self.evaluator(x))
        if len(y) != self.dim + 1 or min(y) < -RANGE_TOL or abs(sum(y) - 1.0) > RANGE_TOL:
            raise MapRangeError(f"{self.description or 'map'} sends {x} to {y}, outside the simplex")
        return y


def identity_map(d: int) -> SimplexMap:
    return SimplexMap(d, lambda x: x, "identity")


def rotate_map(d: int) -> SimplexMap:
    """(x0, x1, ..., xd) -> (x1, ..., xd, x0); the barycenter is the only fixed point."""
    return SimplexMap(d, lambda x: tuple(x[1:]) + (x[0],), "rotate")


def constant_map(c: Sequence[float]) -> SimplexMap:
    c = tuple(float(x) for x in c)
    if len(c) < 2 or min(c) < 0 or abs(sum(c) - 1.0) > RANGE_TOL:
        raise InputError(f"constant {c} is not a point of a simplex")
    return SimplexMap(len(c) - 1, lambda x: c, "const:" + ",".join(repr(v) for v in c))


def squash_map(d: int, t: float) -> SimplexMap:
    """Convex combination (1 - t) x + t * barycenter."""
    if not 0.0 <= t <= 1.0:
        raise InputError(f"squash weight {t} outside [0, 1]")
    b = 1.0 / (d + 1)
    return SimplexMap(d, lambda x: tuple((1 - t) * xi + t * b for xi in x), f"squash:{t!r}")


def named_map(spec: str, dim: int | None = None) -> SimplexMap:
    """Parse "identity", "rotate", "const:c0,c1,..." or "squash:t"."""
    name, _, arg = spec.partition(":")
    if name == "const":
        try:
            return constant_map([float(x) for x in arg.split(",")])
        except ValueError as exc:
            raise InputError(f"bad constant map {spec!r}") from exc
    d = 2 if dim is None else dim
    if name == "identity" and not arg:
        return identity_map(d)
    if name == "rotate" and not arg:
        return rotate_map(d)
    if name == "squash":
        try:
            return squash_map(d, float(arg))
        except ValueError as exc:
            raise InputError(f"bad squash weight in {spec!r}") from exc
    raise InputError(f"unknown map {spec!r}")


def label_from_map(f: SimplexMap, t: Triangulation) -> Labeling:
    """Label each vertex with the first coordinate the map does not increase."""
    if f.dim != t.dim:
        raise InputError(f"map dimension {f.dim} != triangulation dimension {t.dim}")
    labels = []
    for v, coords in enumerate(t.vertices):
        x = t.point(v)
        y = f(x)
        for i, c in enumerate(coords):
            if c > 0 and y[i] <= x[i] + LABEL_TOL:
                labels.append(i)
                break
        else:
            raise MapRangeError(f"no admissible label at vertex {coords}")
    return tuple(labels)


def residual(f: SimplexMap, x: Point) -> float:
    return max(abs(a - b) for a, b in zip(f(x), x))


@dataclass(frozen=True)
class FixedPointResult:
    point: Point
    residual: float
    subdivision: int
    cell: tuple[tuple[int, ...], ...]  # integer barycentric vertices of the cell
    converged: bool
    history: tuple[tuple[int, float], ...] = ()  # (k, best residual so far)


def approx_fixed_point(f: SimplexMap, eps: float, k0: int = 1, max_k: int | None = None) -> FixedPointResult:
    """Refine k = k0, 2 k0, 4 k0, ... until a panchromatic cell's barycenter has residual <= eps.

    Keeps the best candidate seen; ``converged`` is False if ``max_k`` is
    reached first.
    """
    d = f.dim
    if d not in KUHN_LIMITS:
        raise InputError(f"dimension {d} not supported")
    if max_k is None:
        max_k = KUHN_LIMITS[d]
    if not eps > 0:
        raise InputError("eps must be positive")
    if not 1 <= k0 <= max_k <= KUHN_LIMITS[d]:
        raise InputError(f"need 1 <= k0 <= max_k <= {KUHN_LIMITS[d]}, got k0={k0}, max_k={max_k}")
    best = None
    history = []
    k = k0
    while k <= max_k:
        t = kuhn_triangulation(d, k)
        found = find_panchromatic_path(t, label_from_map(f, t))
        cell = t.cells[found.cell]
        x = tuple(sum(t.vertices[v][i] for v in cell) / (k * (d + 1)) for i in range(d + 1))
        r = residual(f, x)
        if best is None or r < best[1]:
            best = (x, r, k, tuple(t.vertices[v] for v in cell))
        history.append((k, best[1]))
        if r <= eps:
            break
        k *= 2
    x, r, k_used, cell = best
    return FixedPointResult(x, r, k_used, cell, r <= eps, tuple(history))
