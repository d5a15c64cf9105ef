"""Intrinsic curvature machinery over metric coefficient fields.

A MetricField supplies E, F, G with the derivative data the closed-form
curvature expression consumes: the six first partials plus the single
second-order combination (-E_vv + 2 F_uv - G_uu).  Metrics come either
from text expressions in (u, v) (the (p, q) spelling is accepted too) or
induced from a parametric embedding, in which case all partials are
obtained by differentiating through the composition with jet arithmetic;
no symbolic differentiation is performed anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import exprlang, jets, surfaces
from .errors import DegenerateMetric, DomainError, NotIsometric

EPS_REG = 1e-12


@dataclass(frozen=True)
class MetricJet:
    """E, F, G, their first partials, and bracket = -E_vv + 2F_uv - G_uu."""
    E: float
    F: float
    G: float
    Eu: float
    Ev: float
    Fu: float
    Fv: float
    Gu: float
    Gv: float
    bracket: float

    @property
    def disc(self):
        return self.E * self.G - self.F * self.F


class MetricField:
    """Positive-definite coefficient field ds^2 = E du^2 + 2F du dv + G dv^2."""

    def __init__(self, e_ast, f_ast, g_ast):
        self._e = e_ast
        self._f = f_ast
        self._g = g_ast
        self._surface = None

    @classmethod
    def from_expressions(cls, e_text, f_text, g_text):
        return cls(exprlang.parse(e_text), exprlang.parse(f_text),
                   exprlang.parse(g_text))

    @classmethod
    def from_surface(cls, surface):
        m = cls(None, None, None)
        m._surface = surfaces.as_parametric(surface)
        return m

    def at(self, u, v):
        """Metric data at (u, v); raises DegenerateMetric off the cone."""
        if self._surface is not None:
            fff = surfaces.first_fundamental_form(self._surface, u, v)
            mj = MetricJet(fff.E, fff.F, fff.G, fff.E_p, fff.E_q,
                           fff.F_p, fff.F_q, fff.G_p, fff.G_q, fff.bracket)
        else:
            uj = jets.Jet2_2.variable_u(u)
            vj = jets.Jet2_2.variable_v(v)
            bindings = {"u": uj, "v": vj, "p": uj, "q": vj}
            ej = _as_jet(exprlang.evaluate(self._e, bindings))
            fj = _as_jet(exprlang.evaluate(self._f, bindings))
            gj = _as_jet(exprlang.evaluate(self._g, bindings))
            bracket = -ej.dvv + 2.0 * fj.duv - gj.duu
            mj = MetricJet(ej.v, fj.v, gj.v, ej.du, ej.dv, fj.du, fj.dv,
                           gj.du, gj.dv, bracket)
        if mj.E <= 0.0 or mj.G <= 0.0 or mj.disc <= EPS_REG:
            raise DegenerateMetric(
                f"metric not positive definite at ({u}, {v}): "
                f"E={mj.E!r}, F={mj.F!r}, G={mj.G!r}")
        return mj

    def values(self, u, v):
        mj = self.at(u, v)
        return mj.E, mj.F, mj.G

    def norm(self, u, v, vec):
        """Metric length of a tangent vector at (u, v)."""
        E, F, G = self.values(u, v)
        return math.sqrt(E * vec[0] ** 2 + 2.0 * F * vec[0] * vec[1]
                         + G * vec[1] ** 2)

    def area_element(self, u, v):
        mj = self.at(u, v)
        return math.sqrt(mj.disc)


def _as_jet(value):
    if jets.is_jet(value):
        return value
    return jets.Jet2_2.constant(value)


def formula_egregia(metric, u, v):
    """Gaussian curvature from E, F, G alone:

    kappa = 1 / (4 (EG - F^2)^2) * { E [...] + F [...] + G [...]
            + 2 (EG - F^2) [-E_vv + 2 F_uv - G_uu] }.
    """
    m = metric.at(u, v)
    disc = m.disc
    num = (m.E * (m.Ev * m.Gv - 2.0 * m.Fu * m.Gv + m.Gu * m.Gu)
           + m.F * (m.Eu * m.Gv - m.Ev * m.Gu - 2.0 * m.Ev * m.Fv
                    + 4.0 * m.Fu * m.Fv - 2.0 * m.Fu * m.Gu)
           + m.G * (m.Eu * m.Gu - 2.0 * m.Eu * m.Fv + m.Ev * m.Ev)
           + 2.0 * disc * m.bracket)
    return num / (4.0 * disc * disc)


def flatness_residual(metric, u, v):
    """Second-order differential expression whose vanishing characterizes
    local isometry to the Euclidean plane; numerically it equals
    4 (EG - F^2)^2 times the curvature."""
    m = metric.at(u, v)
    e_term = m.Ev * m.Gv - 2.0 * m.Fu * m.Gv + m.Gu * m.Gu
    f_term = (m.Eu * m.Gv - m.Ev * m.Gu - 2.0 * m.Ev * m.Fv
              + 4.0 * m.Fu * m.Fv - 2.0 * m.Fu * m.Gu)
    g_term = m.Eu * m.Gu - 2.0 * m.Eu * m.Fv + m.Ev * m.Ev
    second = 2.0 * (m.E * m.G - m.F * m.F) * m.bracket
    return m.E * e_term + m.F * f_term + m.G * g_term + second


def curvature_isothermal(lam_ast, u, v):
    """kappa = -(1/lambda^2) (d^2 log lambda / du^2 + d^2 log lambda / dv^2)
    for the conformal metric ds^2 = lambda^2 (du^2 + dv^2)."""
    uj = jets.Jet2_2.variable_u(u)
    vj = jets.Jet2_2.variable_v(v)
    lam = _as_jet(exprlang.evaluate(lam_ast, {"u": uj, "v": vj, "p": uj, "q": vj}))
    if lam.v <= 0.0:
        raise DomainError(f"conformal factor must be positive, got {lam.v!r}")
    loglam = jets.log(lam)
    return -(loglam.duu + loglam.dvv) / (lam.v * lam.v)


def curvature_geodesic_polar(g_ast, p, q):
    """kappa = -(1/sqrt(G)) d^2 sqrt(G) / dp^2 for ds^2 = dp^2 + G dq^2."""
    pj = jets.Jet2_2.variable_u(p)
    qj = jets.Jet2_2.variable_v(q)
    gj = _as_jet(exprlang.evaluate(g_ast, {"p": pj, "q": qj, "u": pj, "v": qj}))
    if gj.v <= 0.0:
        raise DomainError(f"G must be positive, got {gj.v!r}")
    root = jets.sqrt(gj)
    return -root.duu / root.v


@dataclass(frozen=True)
class MetricResiduals:
    max_dE: float
    max_dF: float
    max_dG: float

    @property
    def max(self):
        return max(self.max_dE, self.max_dF, self.max_dG)


def verify_isometry(surface_a, surface_b, grid):
    """Max mismatch of the two induced metrics over a shared (p, q) grid,
    the identity map being the correspondence."""
    de = df = dg = 0.0
    for (p, q) in grid:
        fa = surfaces.first_fundamental_form(surface_a, p, q)
        fb = surfaces.first_fundamental_form(surface_b, p, q)
        de = max(de, abs(fa.E - fb.E))
        df = max(df, abs(fa.F - fb.F))
        dg = max(dg, abs(fa.G - fb.G))
    return MetricResiduals(de, df, dg)


@dataclass(frozen=True)
class EgregiumReport:
    """Pointwise intrinsic vs extrinsic curvature over a grid, valid only
    because the metric residuals passed the isometry tolerance first."""
    rows: tuple  # (u, v, kappa_intrinsic, kappa_extrinsic, defect)
    residuals: MetricResiduals
    max_defect: float
    passed: bool


def egregium_check(surface_a, surface_b, grid, tol_metric=1e-8,
                   tol_kappa=1e-7):
    """Verify curvature invariance across an isometric pair.

    Refuses (NotIsometric) when the metrics disagree beyond tol_metric;
    otherwise reports intrinsic and extrinsic curvature at every grid point
    with the maximal pairwise defect across both surfaces.
    """
    grid = tuple(grid)
    residuals = verify_isometry(surface_a, surface_b, grid)
    if residuals.max > tol_metric:
        raise NotIsometric(
            f"metric residuals {residuals} exceed tolerance {tol_metric!r}")
    metric_a = MetricField.from_surface(surface_a)
    metric_b = MetricField.from_surface(surface_b)
    rows = []
    max_defect = 0.0
    for (u, v) in grid:
        k_int = formula_egregia(metric_a, u, v)
        k_int_b = formula_egregia(metric_b, u, v)
        k_ext_a = surfaces.gauss_curvature_parametric(surface_a, u, v)
        k_ext_b = surfaces.gauss_curvature_parametric(surface_b, u, v)
        ks = (k_int, k_int_b, k_ext_a, k_ext_b)
        defect = max(ks) - min(ks)
        max_defect = max(max_defect, defect)
        rows.append((u, v, k_int, k_ext_a, defect))
    return EgregiumReport(tuple(rows), residuals, max_defect,
                          max_defect <= tol_kappa)


def grid_points(u_range, v_range, nu, nv):
    """Row-major rectangular grid, endpoints included."""
    u0, u1 = u_range
    v0, v1 = v_range
    pts = []
    for i in range(nu):
        u = u0 + (u1 - u0) * i / (nu - 1) if nu > 1 else u0
        for j in range(nv):
            v = v0 + (v1 - v0) * j / (nv - 1) if nv > 1 else v0
            pts.append((u, v))
    return pts
