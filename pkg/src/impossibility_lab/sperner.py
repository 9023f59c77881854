"""Triangulated simplices, Sperner labelings and panchromatic-cell search.

Points are kept in exact integer barycentric coordinates (``coords`` summing
to ``denom``), so carriers, facet hashing and validation are bit-exact.
Labels are 0-based internally; files may use 1-based labels.
"""

from __future__ import annotations

import functools
import itertools
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import InputError, InternalInvariantBroken, PreconditionFailed

Labeling = tuple[int, ...]
Cell = tuple[int, ...]
Facet = tuple[int, ...]

# largest subdivision per dimension accepted by kuhn_triangulation
KUHN_LIMITS = {1: 128, 2: 128, 3: 6, 4: 4}


def carrier(coords: Sequence[int]) -> frozenset[int]:
    """Corners of the smallest face containing the point."""
    return frozenset(i for i, c in enumerate(coords) if c > 0)


@dataclass(frozen=True)
class Triangulation:
    dim: int
    denom: int
    vertices: tuple[tuple[int, ...], ...]
    cells: tuple[Cell, ...]

    @functools.cached_property
    def carriers(self) -> tuple[frozenset[int], ...]:
        return tuple(carrier(v) for v in self.vertices)

    @functools.cached_property
    def facet_cells(self) -> dict[Facet, list[int]]:
        """Sorted facet -> indices of the cells containing it."""
        out: dict[Facet, list[int]] = defaultdict(list)
        for ci, cell in enumerate(self.cells):
            for facet in itertools.combinations(sorted(cell), self.dim):
                out[facet].append(ci)
        return dict(out)

    @functools.cached_property
    def vertex_cells(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for ci, cell in enumerate(self.cells):
            for v in cell:
                out[v].append(ci)
        return tuple(tuple(x) for x in out)

    def is_boundary_facet(self, facet: Facet) -> bool:
        """True iff all vertices of ``facet`` lie on one proper face of the simplex."""
        return any(all(self.vertices[v][j] == 0 for v in facet) for j in range(self.dim + 1))

    def point(self, v: int) -> tuple[float, ...]:
        return tuple(c / self.denom for c in self.vertices[v])


def structural_problems(t: Triangulation) -> list[str]:
    """Every way ``t`` fails to be a pseudo-manifold triangulation of the simplex; empty if fine."""
    problems = []
    d, k = t.dim, t.denom
    if d < 0 or k < 1:
        return [f"bad dim/denom ({d}, {k})"]
    if len(set(t.vertices)) != len(t.vertices):
        problems.append("duplicate vertices")
    for vi, v in enumerate(t.vertices):
        if len(v) != d + 1 or any(c < 0 for c in v) or sum(v) != k:
            problems.append(f"vertex {vi} {v} is not a point of the simplex with denominator {k}")
    present = set(t.vertices)
    for i in range(d + 1):
        corner = tuple(k if j == i else 0 for j in range(d + 1))
        if corner not in present:
            problems.append(f"corner {i} missing")
    for ci, cell in enumerate(t.cells):
        if len(cell) != d + 1 or len(set(cell)) != d + 1:
            problems.append(f"cell {ci} does not have {d + 1} distinct vertices")
        elif any(not 0 <= v < len(t.vertices) for v in cell):
            problems.append(f"cell {ci} refers to a missing vertex")
    if problems or d == 0:
        if d == 0 and len(t.cells) != 1:
            problems.append("a 0-simplex has exactly one cell")
        return problems
    for facet, owners in t.facet_cells.items():
        want = 1 if t.is_boundary_facet(facet) else 2
        if len(owners) != want:
            problems.append(f"facet {facet} shared by {len(owners)} cells, expected {want}")
    return problems


def kuhn_triangulation(d: int, k: int) -> Triangulation:
    """Freudenthal/Kuhn subdivision of the d-simplex into k**d cells.

    Works in cumulative coordinates k >= y1 >= ... >= yd >= 0: every unit
    cube is cut into d! simplices (one per axis order) and the ones inside
    the region are kept.  Barycentric coordinates are the successive
    differences of (k, y1, ..., yd, 0).
    """
    if d not in KUHN_LIMITS:
        raise InputError(f"dimension {d} outside [1, {max(KUHN_LIMITS)}]")
    if not 1 <= k <= KUHN_LIMITS[d]:
        raise InputError(f"subdivision {k} outside [1, {KUHN_LIMITS[d]}] for d={d}")

    def inside(y):
        return k >= y[0] and all(y[i] >= y[i + 1] for i in range(d - 1)) and y[-1] >= 0

    def bary(y):
        full = (k,) + y + (0,)
        return tuple(full[i] - full[i + 1] for i in range(d + 1))

    index: dict[tuple[int, ...], int] = {}
    vertices: list[tuple[int, ...]] = []
    for y in itertools.product(range(k + 1), repeat=d):
        if inside(y):
            index[y] = len(vertices)
            vertices.append(bary(y))

    cells = []
    for base in itertools.product(range(k), repeat=d):
        for perm in itertools.permutations(range(d)):
            y = list(base)
            path = [tuple(y)]
            for axis in perm:
                y[axis] += 1
                path.append(tuple(y))
            if all(inside(p) for p in path):
                cells.append(tuple(sorted(index[p] for p in path)))
    cells.sort()
    return Triangulation(d, k, tuple(vertices), tuple(cells))


@dataclass(frozen=True)
class LabelingReport:
    valid: bool
    violations: tuple[tuple[int, int], ...]  # (vertex, offending label)


def validate_labeling(t: Triangulation, labels: Sequence[int]) -> LabelingReport:
    if len(labels) != len(t.vertices):
        raise InputError(f"{len(labels)} labels for {len(t.vertices)} vertices")
    bad = tuple((v, lab) for v, lab in enumerate(labels) if lab not in t.carriers[v])
    return LabelingReport(not bad, bad)


def _require_valid(t, labels):
    report = validate_labeling(t, labels)
    if not report.valid:
        raise PreconditionFailed(f"not a Sperner labeling: {report.violations[:5]}", witness=report)


def is_panchromatic(t: Triangulation, labels: Sequence[int], cell: int) -> bool:
    return len({labels[v] for v in t.cells[cell]}) == t.dim + 1


def find_panchromatic_all(t: Triangulation, labels: Sequence[int]) -> list[int]:
    """Brute force: every cell carrying all d+1 labels, ascending."""
    _require_valid(t, labels)
    return [ci for ci in range(len(t.cells)) if is_panchromatic(t, labels, ci)]


def random_sperner_labeling(t: Triangulation, rng: random.Random) -> Labeling:
    return tuple(rng.choice(sorted(c)) for c in t.carriers)


def boundary_face(t: Triangulation) -> tuple[Triangulation, list[int]]:
    """The induced triangulation of the face spanned by corners 0..d-1.

    Returns the face (dimension d-1) and the map from face vertex index to
    vertex index in ``t``.
    """
    d = t.dim
    on_face = [v for v, c in enumerate(t.vertices) if c[d] == 0]
    local = {v: i for i, v in enumerate(on_face)}
    cells = sorted(
        tuple(local[v] for v in facet)
        for facet in t.facet_cells
        if all(v in local for v in facet)
    )
    face = Triangulation(d - 1, t.denom, tuple(t.vertices[v][:d] for v in on_face), tuple(cells))
    return face, on_face


@dataclass(frozen=True)
class PathResult:
    cell: int
    trace: tuple[int, ...]  # cells visited, in order, over all walks
    walks: tuple[tuple[int, ...], ...]  # trace split per start door


def find_panchromatic_path(t: Triangulation, labels: Sequence[int]) -> PathResult:
    """Door-to-door path following.

    A door is a facet labelled exactly {0..d-1}.  Doors on the boundary
    only occur on the face spanned by corners 0..d-1; the first one is found
    by recursing into that face.  From a door the walk enters its cell and
    leaves through the cell's other door until it reaches a panchromatic
    cell (one door only) or drops out through another boundary door, in
    which case the next unused boundary door is tried.
    """
    labels = tuple(labels)
    _require_valid(t, labels)
    return _path(t, labels)


def _path(t: Triangulation, labels: Labeling) -> PathResult:
    d = t.dim
    if d == 0:
        return PathResult(0, (0,), ((0,),))
    want = frozenset(range(d))

    def is_door(facet):
        return frozenset(labels[v] for v in facet) == want

    face, face_map = boundary_face(t)
    first = _path(face, tuple(labels[v] for v in face_map)).cell
    first_door = tuple(sorted(face_map[v] for v in face.cells[first]))
    if not is_door(first_door):
        raise InternalInvariantBroken(f"recursive search returned non-door facet {first_door}")

    boundary_doors = sorted(
        (owners[0], facet)
        for facet, owners in t.facet_cells.items()
        if len(owners) == 1 and is_door(facet)
    )
    order = [first_door] + [f for _, f in boundary_doors if f != first_door]
    used: set[Facet] = set()
    trace: list[int] = []
    walks = []
    for door in order:
        if door in used:
            continue
        used.add(door)
        walk = []
        (cell,) = t.facet_cells[door]
        entered = door
        while True:
            walk.append(cell)
            if is_panchromatic(t, labels, cell):
                trace.extend(walk)
                walks.append(tuple(walk))
                return PathResult(cell, tuple(trace), tuple(walks))
            exits = [f for f in itertools.combinations(sorted(t.cells[cell]), d) if f != entered and is_door(f)]
            if len(exits) != 1:
                raise InternalInvariantBroken(f"cell {cell} has {len(exits)} exit doors")
            (out,) = exits
            nxt = [c for c in t.facet_cells[out] if c != cell]
            if not nxt:
                used.add(out)
                break
            cell, entered = nxt[0], out
        trace.extend(walk)
        walks.append(tuple(walk))
    raise InternalInvariantBroken("every boundary door paired off without reaching a panchromatic cell")


# -- JSON -------------------------------------------------------------------

def triangulation_to_dict(t: Triangulation, labels: Sequence[int] | None = None,
                          labels_base: int = 0) -> dict[str, Any]:
    d: dict[str, Any] = {
        "dim": t.dim,
        "denom": t.denom,
        "vertices": [list(v) for v in t.vertices],
        "cells": [list(c) for c in t.cells],
    }
    if labels is not None:
        d["labels"] = [lab + labels_base for lab in labels]
        d["labels_base"] = labels_base
    return d


def triangulation_from_dict(d: dict[str, Any]) -> tuple[Triangulation, Labeling | None]:
    """Parse and structurally validate; labels come back 0-based (or None)."""
    try:
        t = Triangulation(
            int(d["dim"]), int(d["denom"]),
            tuple(tuple(int(c) for c in v) for v in d["vertices"]),
            tuple(tuple(int(v) for v in c) for c in d["cells"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed triangulation JSON: {exc}") from exc
    problems = structural_problems(t)
    if problems:
        raise InputError("invalid triangulation: " + "; ".join(problems[:5]))
    labels = None
    if d.get("labels") is not None:
        base = int(d.get("labels_base", 0))
        if base not in (0, 1):
            raise InputError("labels_base must be 0 or 1")
        try:
            labels = tuple(int(x) - base for x in d["labels"])
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed labels: {exc}") from exc
        if len(labels) != len(t.vertices):
            raise InputError(f"{len(labels)} labels for {len(t.vertices)} vertices")
    return t, labels
