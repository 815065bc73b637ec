"""Adaptive quadrature along x-plane paths with sheet tracking.

Integrals of differentials ``f(x, y, lam) dx`` are computed per segment
with Gauss-Legendre panels and bisection refinement; the fiber values
``(y, lam)`` are carried along by the continuation stepper, so the
integrand is evaluated on one consistent sheet.

A path may end at a designated branch x-value; the final segment is then
reparametrized by the square-root local parameter (a :class:`SqrtLine`),
which makes the ``1/sqrt`` singularity of the integrands smooth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .continuation import advance_fiber_values
from .errors import ContinuationFailure, QuadratureNonconvergence
from .paths import XPath

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)
MAX_DEPTH = 26


@dataclass(frozen=True)
class SqrtLine:
    """Line segment from z0 to a branch value z1, parametrized so the
    velocity vanishes at z1: x(t) = z1 - (z1 - z0)(1 - t)^2."""

    z0: complex
    z1: complex

    def point(self, t):
        return self.z1 - (self.z1 - self.z0) * (1 - t) ** 2

    def dpoint(self, t):
        return 2 * (1 - t) * (self.z1 - self.z0)

    @property
    def length(self):
        return abs(self.z1 - self.z0)

    def reversed(self):
        raise NotImplementedError("sqrt-regularized segments are end-only")


def _march(curve, seg, t0, t1, y, lam, path_scale):
    """Continue fiber values from seg.point(t0) to seg.point(t1)."""
    t = t0
    x = complex(seg.point(t0))
    while t < t1:
        dt = t1 - t
        while True:
            x_next = complex(seg.point(t + dt))
            res = advance_fiber_values(curve, x, y, lam, x_next)
            if res is not None:
                break
            dt *= 0.5
            if dt * seg.length < 1e-13 * path_scale:
                raise ContinuationFailure("quadrature marching underflow")
        y, lam = res
        x = x_next
        t += dt
    return y, lam


def _gl_panel(curve, seg, ta, tb, y, lam, integrand, path_scale):
    """Gauss-Legendre estimate over [ta, tb]; returns (value, y_b, lam_b)."""
    mid = 0.5 * (ta + tb)
    half = 0.5 * (tb - ta)
    total = None
    t_cur = ta
    for node, w in zip(_GL_NODES, _GL_WEIGHTS):
        t = mid + half * node
        y, lam = _march(curve, seg, t_cur, t, y, lam, path_scale)
        t_cur = t
        x = complex(seg.point(t))
        contrib = np.asarray(integrand(x, y, lam)) * complex(seg.dpoint(t)) * (w * half)
        total = contrib if total is None else total + contrib
    if not isinstance(seg, SqrtLine) or tb < 1.0:
        y, lam = _march(curve, seg, t_cur, tb, y, lam, path_scale)
    return total, y, lam


def _adaptive(curve, seg, ta, tb, y, lam, integrand, tol, path_scale, depth=0):
    whole, _, _ = _gl_panel(curve, seg, ta, tb, y, lam, integrand, path_scale)
    tm = 0.5 * (ta + tb)
    left, ym, lamm = _gl_panel(curve, seg, ta, tm, y, lam, integrand, path_scale)
    right, yb, lamb = _gl_panel(curve, seg, tm, tb, ym, lamm, integrand,
                                path_scale)
    err = np.max(np.abs(whole - (left + right)))
    if err <= tol:
        return left + right, yb, lamb
    if depth >= MAX_DEPTH:
        raise QuadratureNonconvergence(
            f"panel refinement stalled (err {err:.2e} > tol {tol:.2e})")
    lv, ym2, lamm2 = _adaptive(curve, seg, ta, tm, y, lam, integrand,
                               tol / 2, path_scale, depth + 1)
    rv, yb2, lamb2 = _adaptive(curve, seg, tm, tb, ym2, lamm2, integrand,
                               tol / 2, path_scale, depth + 1)
    return lv + rv, yb2, lamb2


def integrate_differentials(curve, integrand, path, start, abs_tol=1e-10):
    """Integrate vector-valued ``integrand(x, y, lam) dx`` along ``path``.

    ``start`` must be a curve point over ``path.start``.  Returns
    ``(value, endpoint)`` where endpoint carries the continued sheet.
    The error target is absolute, per segment.
    """
    from .curves import SurfacePoint

    if path.length == 0:
        probe = np.asarray(integrand(complex(start.x), complex(start.y),
                                     complex(start.lam)))
        return np.zeros_like(probe), start
    y, lam = complex(start.y), complex(start.lam)
    x0 = complex(start.x)
    if abs(x0 - path.start) > 1e-8 * (1 + abs(path.start)):
        raise ValueError("path does not begin at the start point")
    total = None
    scale = path.length
    for seg in path.segments:
        if seg.length == 0:
            continue
        val, y, lam = _adaptive(curve, seg, 0.0, 1.0, y, lam, integrand,
                                abs_tol, scale)
        total = val if total is None else total + val
    x_end = complex(path.segments[-1].point(1.0))
    if isinstance(path.segments[-1], SqrtLine):
        end = SurfacePoint(x_end, y, lam, sheet_id=-1)
    else:
        end = SurfacePoint(x_end, y, lam)
        end = SurfacePoint(x_end, y, lam, sheet_id=curve.sheet_of(end))
    return total, end


def path_to_branch_endpoint(path_regular_part, branch_x):
    """Append a sqrt-regularized final approach to ``branch_x``."""
    segs = list(path_regular_part.segments)
    z0 = path_regular_part.end
    segs.append(SqrtLine(complex(z0), complex(branch_x)))
    return XPath(tuple(segs), path_regular_part.clearance)
