"""Numerical integration of scalar fields against the metric area element.

Rectangles use tensor Gauss-Legendre; triangulated regions use a symmetric
7-point degree-5 rule per triangle, refined by uniform subdivision.  Panel
sums are accumulated in a fixed order so results are reproducible bit for
bit.  Singular chart edges (sphere poles) are handled by shrinking the
rectangle with an explicit cutoff, not by adaptive refinement; corpus
integrands vanish there, so cutoffs are benign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class Rect:
    u0: float
    u1: float
    v0: float
    v1: float

    def __post_init__(self):
        if not (self.u1 > self.u0 and self.v1 > self.v0):
            raise ValueError(f"empty rectangle {self!r}")


@dataclass(frozen=True)
class TriFan:
    """Parameter-space triangles; each is three (u, v) vertices."""
    triangles: tuple

    def __post_init__(self):
        for tri in self.triangles:
            if abs(_tri_area(tri)) < 1e-300:
                raise ValueError(f"degenerate triangle {tri!r}")


Region = Rect | TriFan


def _tri_area(tri):
    (ax, ay), (bx, by), (cx, cy) = tri
    return 0.5 * ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return tuple(nodes.tolist()), tuple(weights.tolist())


# symmetric 7-point rule, exact for total degree 5 (barycentric data)
_SQRT15 = math.sqrt(15.0)
_TRI7 = (
    (1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0),
    ((6.0 - _SQRT15) / 21.0, (6.0 - _SQRT15) / 21.0, (155.0 - _SQRT15) / 1200.0),
    ((6.0 - _SQRT15) / 21.0, (9.0 + 2.0 * _SQRT15) / 21.0, (155.0 - _SQRT15) / 1200.0),
    ((9.0 + 2.0 * _SQRT15) / 21.0, (6.0 - _SQRT15) / 21.0, (155.0 - _SQRT15) / 1200.0),
    ((6.0 + _SQRT15) / 21.0, (6.0 + _SQRT15) / 21.0, (155.0 + _SQRT15) / 1200.0),
    ((6.0 + _SQRT15) / 21.0, (9.0 - 2.0 * _SQRT15) / 21.0, (155.0 + _SQRT15) / 1200.0),
    ((9.0 - 2.0 * _SQRT15) / 21.0, (6.0 + _SQRT15) / 21.0, (155.0 + _SQRT15) / 1200.0),
)


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float  # |I(order) - I(order/2)|


def integrate(metric, field, region, order=32):
    """Integral of field(u, v) * sqrt(EG - F^2) over the region.

    For rectangles `order` is the tensor Gauss-Legendre point count per
    axis; for triangle fans it is the uniform subdivision count per side.
    The reported error compares against the half-order evaluation.
    """
    coarse_order = max(1, order // 2)
    value = _integrate_once(metric, field, region, order)
    if coarse_order == order:
        return QuadResult(value, 0.0)
    coarse = _integrate_once(metric, field, region, coarse_order)
    return QuadResult(value, abs(value - coarse))


def _integrate_once(metric, field, region, order):
    if isinstance(region, Rect):
        return _integrate_rect(metric, field, region, order)
    if isinstance(region, TriFan):
        total = 0.0
        for tri in region.triangles:
            total += _integrate_tri(metric, field, tri, order)
        return total
    raise TypeError(f"unknown region {type(region).__name__}")


def _integrate_rect(metric, field, rect, order):
    nodes, weights = gauss_legendre(order)
    su = 0.5 * (rect.u1 - rect.u0)
    mu = 0.5 * (rect.u1 + rect.u0)
    sv = 0.5 * (rect.v1 - rect.v0)
    mv = 0.5 * (rect.v1 + rect.v0)
    total = 0.0
    for xi, wi in zip(nodes, weights):
        u = mu + su * xi
        row = 0.0
        for yj, wj in zip(nodes, weights):
            v = mv + sv * yj
            row += wj * field(u, v) * metric.area_element(u, v)
        total += wi * row
    return total * su * sv


def _integrate_tri(metric, field, tri, subdivisions):
    (ax, ay), (bx, by), (cx, cy) = tri
    n = max(1, subdivisions)
    total = 0.0
    # uniform refinement into n^2 congruent sub-triangles
    for i in range(n):
        for j in range(n - i):
            l0 = (i / n, j / n)
            l1 = ((i + 1) / n, j / n)
            l2 = (i / n, (j + 1) / n)
            total += _tri_rule(metric, field, tri, (l0, l1, l2))
            if j < n - i - 1:
                l3 = ((i + 1) / n, (j + 1) / n)
                total += _tri_rule(metric, field, tri, (l1, l3, l2))
    return total


def _tri_rule(metric, field, tri, local):
    (ax, ay), (bx, by), (cx, cy) = tri

    def embed(lmb):
        s, t = lmb
        return (ax + s * (bx - ax) + t * (cx - ax),
                ay + s * (by - ay) + t * (cy - ay))

    p0, p1, p2 = (embed(l) for l in local)
    area = abs(_tri_area((p0, p1, p2)))
    acc = 0.0
    for (l1, l2, w) in _TRI7:
        l0 = 1.0 - l1 - l2
        u = l0 * p0[0] + l1 * p1[0] + l2 * p2[0]
        v = l0 * p0[1] + l1 * p1[1] + l2 * p2[1]
        acc += w * field(u, v) * metric.area_element(u, v)
    return acc * area
