"""Analytic continuation of curve points along x-plane paths.

The stepper advances along a path with first-order prediction of
``(y, lam)`` and corrects onto the exact fiber (closed-form roots) at the
new x.  A step is accepted only when the nearest root is unambiguous: if
the second-nearest root is within ``AMBIGUITY_FACTOR`` times the distance
of the nearest one, the step is halved.  This guarantees sheet tracking
suitable for monodromy.
"""

from __future__ import annotations

import numpy as np

from .curves import SurfacePoint
from .errors import ContinuationFailure, NearBranchPoint

AMBIGUITY_FACTOR = 3.0
MIN_STEP_FRACTION = 1e-12
GROWTH = 1.8


def _nearest(candidates, target):
    """(best, margin_ok): nearest candidate and the ambiguity verdict."""
    d = [abs(c - target) for c in candidates]
    order = np.argsort(d)
    best = candidates[int(order[0])]
    if len(candidates) == 1:
        return best, True
    return best, d[order[1]] >= AMBIGUITY_FACTOR * d[order[0]]


def advance_fiber_values(curve, x0, y0, lam0, x1):
    """One predictor-corrector step x0 -> x1.

    Returns (y1, lam1) on the exact fiber over x1, or None when the
    nearest-root choice is ambiguous and the step must shrink.
    """
    dx = x1 - x0
    ypred = y0 + curve.base.dp5(x0) / (2 * y0) * dx if y0 != 0 else y0
    dR = curve.d_lam(lam0, x0)
    lpred = lam0 - curve.d_x(lam0, x0) / dR * dx if dR != 0 else lam0

    y_plus = np.sqrt(complex(curve.base.p5(x1)))
    y1, ok_y = _nearest([y_plus, -y_plus], ypred)
    lam1, ok_l = _nearest(curve.lam_roots(x1), lpred)
    if not (ok_y and ok_l):
        return None
    return y1, lam1


def continue_point(curve, start, path, check_clearance=True):
    """Continue ``start`` along ``path``; returns the endpoint with its
    canonical sheet id.

    Raises :class:`ContinuationFailure` on step underflow and
    :class:`NearBranchPoint` if the path violates its clearance (interior
    points only; endpoints may be designated branch points).
    """
    if abs(complex(start.x) - path.start) > 1e-8 * (1 + abs(path.start)):
        raise ValueError("path does not begin at the start point")
    if path.length == 0:
        return start
    x, y, lam = complex(start.x), complex(start.y), complex(start.lam)
    floor_len = max(path.clearance / 4, 1e-9 * curve.x_spread)
    for seg in path.segments:
        if seg.length == 0:
            continue
        t = 0.0
        while t < 1.0:
            cap = max(0.25 * curve.clearance_to_branch(x), floor_len)
            dt = min(1.0 - t, cap / seg.length)
            while True:
                x1 = complex(seg.point(t + dt))
                res = advance_fiber_values(curve, x, y, lam, x1)
                if res is not None:
                    break
                dt *= 0.5
                if dt * seg.length < MIN_STEP_FRACTION * path.length:
                    raise ContinuationFailure(
                        "step size underflow during continuation")
            y, lam = res
            x = x1
            t = t + dt
            if check_clearance and path.clearance > 0 and t < 1.0:
                if curve.clearance_to_branch(x) < 0.5 * path.clearance:
                    raise NearBranchPoint(
                        "path interior violates its clearance")
    end = SurfacePoint(x, y, lam)
    return SurfacePoint(x, y, lam, sheet_id=curve.sheet_of(end))


def continue_fiber(curve, x_base, path):
    """Continue every fiber point over x_base along a closed path.

    Returns the permutation ``perm`` with ``perm[i] = j`` meaning the
    sheet starting at canonical index i ends at canonical index j.
    """
    fiber = curve.fiber(x_base)
    perm = np.empty(len(fiber), dtype=int)
    for i, pt in enumerate(fiber):
        end = continue_point(curve, pt, path, check_clearance=False)
        perm[i] = end.sheet_id
    if len(set(perm.tolist())) != len(fiber):
        raise ContinuationFailure("monodromy is not a permutation")
    return perm
