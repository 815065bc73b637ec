"""Plane-curve algebra for the two spectral-curve families.

The base curve is the genus-2 hyperelliptic curve ``y^2 = P5(x)`` with
``P5`` monic of degree 5.  A spectral curve lives over it and is cut out
by a second polynomial equation in ``(lam, x)``:

* ``sl2``:  ``lam^2 + (H0 + H1 x + H2 x^2) = 0``          (3 Hamiltonians)
* ``so4``:  ``lam^4 + lam^2 p(x) + q(x)^2 = 0`` with
  ``p = H0 + H1 x + H2 x^2``, ``q = H3 + H4 x + H5 x^2``  (6 Hamiltonians)

Points carry a sheet identity so that analytic continuation and
monodromy are well defined.  All types are immutable values and all
functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.polynomial.polynomial as npp

from .errors import DegenerateCurve, InconsistentGeometry, NearBranchPoint

SL2 = "sl2"
SO4 = "so4"

# Two roots closer than this (relative to their size) count as a double root.
DOUBLE_ROOT_RTOL = 1e-8


def _roots_ascending(coeffs):
    """Roots of a polynomial given by ascending coefficients."""
    c = np.asarray(coeffs, dtype=complex)
    # strip trailing (numerically) zero leading coefficients
    lead = len(c) - 1
    scale = max(1.0, abs(c).max())
    while lead > 0 and abs(c[lead]) <= 1e-14 * scale:
        lead -= 1
    if lead == 0:
        return np.array([], dtype=complex)
    return np.roots(c[: lead + 1][::-1])


def _has_double_root(roots):
    roots = np.asarray(roots)
    n = len(roots)
    if n < 2:
        return False
    tol = DOUBLE_ROOT_RTOL * (1.0 + max(abs(roots)))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) < tol:
                return True
    return False


def _sort_key(value, ndigits=9):
    """Deterministic ordering key for complex values: (arg, |.|)."""
    a = np.angle(value)
    # Push arguments within rounding of -pi over to +pi so the branch cut
    # of arg() cannot split nearly-equal values.
    if a < -np.pi + 10.0 ** (-ndigits):
        a += 2 * np.pi
    return (round(a, ndigits), round(abs(value), ndigits))


@dataclass(frozen=True)
class BaseCurve:
    """Genus-2 base curve ``y^2 = P5(x)``, ``P5`` monic of degree 5.

    ``p5_coeffs`` are ascending: ``P5(x) = sum_k p5_coeffs[k] x^k`` with
    ``p5_coeffs[5] == 1``.
    """

    p5_coeffs: tuple

    def __post_init__(self):
        c = tuple(complex(v) for v in self.p5_coeffs)
        if len(c) != 6:
            raise DegenerateCurve("P5 must have exactly 6 coefficients")
        if c[5] != 1:
            raise DegenerateCurve("P5 must be monic (leading coefficient 1)")
        object.__setattr__(self, "p5_coeffs", c)
        if _has_double_root(self.p5_roots):
            raise DegenerateCurve("P5 is not squarefree")

    @cached_property
    def p5_roots(self):
        return _roots_ascending(self.p5_coeffs)

    def p5(self, x):
        return npp.polyval(x, np.asarray(self.p5_coeffs))

    def dp5(self, x):
        return npp.polyval(x, npp.polyder(np.asarray(self.p5_coeffs)))

    def y_roots(self, x):
        """Both y-values over x, ordered deterministically."""
        y = np.sqrt(complex(self.p5(x)))
        return sorted((y, -y), key=_sort_key)


@dataclass(frozen=True)
class SurfacePoint:
    """A point ``(x, y, lam)`` of a spectral curve with its sheet identity.

    ``sheet_id`` is the index of the point in the deterministic ordering
    of the fiber over ``x`` (see :meth:`SpectralCurve.fiber`).
    """

    x: complex
    y: complex
    lam: complex
    sheet_id: int = -1

    def as_tuple(self):
        return (self.x, self.y, self.lam)


class SpectralCurve:
    """A spectral curve ``R(lam, x, H) = 0`` over a :class:`BaseCurve`.

    Immutable; all methods are pure functions of the inputs.
    """

    def __init__(self, base, family, hams):
        if family not in (SL2, SO4):
            raise ValueError(f"unknown family {family!r}")
        hams = tuple(complex(v) for v in hams)
        expected = 3 if family == SL2 else 6
        if len(hams) != expected:
            raise DegenerateCurve(
                f"{family} needs {expected} Hamiltonians, got {len(hams)}")
        self.base = base
        self.family = family
        self.hams = hams
        self._validate()

    # ------------------------------------------------------------------
    # basic data

    @property
    def h(self):
        """Number of separating points (= dim of the Prym variety)."""
        return 3 if self.family == SL2 else 6

    @property
    def n_sheets(self):
        """Degree of the covering of the x-sphere."""
        return 4 if self.family == SL2 else 8

    @property
    def n_infinity(self):
        """Number of points over x = infinity."""
        return 2 if self.family == SL2 else 4

    @property
    def scale(self):
        return max(1.0, max(abs(c) for c in self.base.p5_coeffs),
                   max(abs(c) for c in self.hams))

    def _p(self, x):
        H = self.hams
        return H[0] + x * (H[1] + x * H[2])

    def _dp(self, x):
        H = self.hams
        return H[1] + 2 * x * H[2]

    def _q(self, x):
        H = self.hams
        return H[3] + x * (H[4] + x * H[5])

    def _dq(self, x):
        H = self.hams
        return H[4] + 2 * x * H[5]

    def _validate(self):
        H = self.hams
        if self.family == SL2:
            if abs(H[2]) > 0 and _has_double_root(np.roots([H[2], H[1], H[0]])):
                raise DegenerateCurve("r2 has a multiple root")
        else:
            tol = 1e-12 * self.scale
            if abs(H[2]) <= tol or abs(H[5]) <= tol:
                raise DegenerateCurve("so4 needs H2 != 0 and H5 != 0")
            if abs(H[2] ** 2 - 4 * H[5] ** 2) <= tol * self.scale:
                raise DegenerateCurve("fiber over infinity is degenerate "
                                      "(H2^2 == 4 H5^2)")

    # ------------------------------------------------------------------
    # defining polynomial and partials

    def value(self, lam, x):
        """The defining polynomial R(lam, x)."""
        if self.family == SL2:
            return lam * lam + self._p(x)
        lam2 = lam * lam
        q = self._q(x)
        return lam2 * lam2 + lam2 * self._p(x) + q * q

    def d_lam(self, lam, x):
        if self.family == SL2:
            return 2 * lam
        return lam * (4 * lam * lam + 2 * self._p(x))

    def d_x(self, lam, x):
        if self.family == SL2:
            return self._dp(x)
        return lam * lam * self._dp(x) + 2 * self._q(x) * self._dq(x)

    def d_hams(self, lam, x):
        """Vector of dR/dH_k at (lam, x)."""
        xs = np.array([1.0, x, x * x], dtype=complex)
        if self.family == SL2:
            return xs
        lam2 = lam * lam
        return np.concatenate([lam2 * xs, 2 * self._q(x) * xs])

    # ------------------------------------------------------------------
    # fibers and sheet ordering

    def lam_roots(self, x):
        """All lambda-values over x (2 for sl2, 4 for so4), unordered."""
        if self.family == SL2:
            lam = np.sqrt(-complex(self._p(x)))
            return [lam, -lam]
        p, q = complex(self._p(x)), complex(self._q(x))
        s = np.sqrt(p * p - 4 * q * q)
        out = []
        for u in ((-p + s) / 2, (-p - s) / 2):
            r = np.sqrt(u)
            out.extend([r, -r])
        return out

    def fiber(self, x):
        """All points of the curve over x with deterministic sheet ids.

        Ordering is lexicographic in (arg y, arg lam, |lam|).
        """
        pts = []
        for y in self.base.y_roots(x):
            for lam in self.lam_roots(x):
                pts.append((y, lam))
        pts.sort(key=lambda yl: _sort_key(yl[0]) + _sort_key(yl[1]))
        return [SurfacePoint(x, y, lam, sheet_id=i)
                for i, (y, lam) in enumerate(pts)]

    def sheet_of(self, point, rtol=1e-6):
        """Sheet id of a point, by nearest match in the canonical fiber."""
        fib = self.fiber(point.x)
        dist = [abs(p.y - point.y) + abs(p.lam - point.lam) for p in fib]
        i = int(np.argmin(dist))
        scale = 1.0 + abs(point.y) + abs(point.lam)
        if dist[i] > rtol * scale:
            raise InconsistentGeometry("point does not lie on the curve")
        return i

    def residuals(self, point):
        """(|y^2 - P5(x)|, |R|) scaled by the coefficient size."""
        s = self.scale
        ry = abs(point.y ** 2 - self.base.p5(point.x)) / s
        rr = abs(self.value(point.lam, point.x)) / s
        return ry, rr

    def on_curve(self, point, tol=1e-10):
        ry, rr = self.residuals(point)
        return ry <= tol and rr <= tol

    # ------------------------------------------------------------------
    # distinguished loci

    @cached_property
    def x_branch_values(self):
        """x-values where the covering of the x-sphere is ramified.

        sl2: roots of P5 (y-sheets) and of r2 (lambda-sheets).
        so4: roots of P5 and of p^2 - 4 q^2 (lambda-sheet pairing).
        """
        vals = list(self.base.p5_roots)
        H = self.hams
        if self.family == SL2:
            vals.extend(_roots_ascending(H[:3]))
        else:
            p2 = npp.polymul(np.asarray(H[:3]), np.asarray(H[:3]))
            q2 = npp.polymul(np.asarray(H[3:]), np.asarray(H[3:]))
            vals.extend(_roots_ascending(npp.polysub(p2, 4 * q2)))
        return np.array(sorted(vals, key=_sort_key))

    @cached_property
    def x_avoid_values(self):
        """x-values continuation must keep clear of.

        Includes the branch x-values and, for so4, the node x-values
        (roots of q) where two lambda-roots collide without monodromy.
        """
        vals = list(self.x_branch_values)
        if self.family == SO4:
            vals.extend(_roots_ascending(np.asarray(self.hams[3:])))
        return np.array(sorted(vals, key=_sort_key))

    @cached_property
    def x_spread(self):
        """Characteristic size of the finite branch locus."""
        v = self.x_avoid_values
        return float(max(1.0, max(abs(v)))) if len(v) else 1.0

    def min_branch_separation(self):
        v = self.x_avoid_values
        n = len(v)
        seps = [abs(v[i] - v[j]) for i in range(n) for j in range(i + 1, n)]
        return min(seps) if seps else np.inf

    def clearance_to_branch(self, x):
        v = self.x_avoid_values
        return min(abs(x - b) for b in v) if len(v) else np.inf

    # ------------------------------------------------------------------
    # spec-level operations

    def branch_points(self):
        """Ramification points of the covering spectral curve -> base curve.

        so4: lam^2 = -p/2 on q = +-p/2 (16 points); sl2: lam = 0 over the
        roots of r2 (4 points).
        """
        H = self.hams
        pts = []
        if self.family == SL2:
            for x in _roots_ascending(H[:3]):
                for y in self.base.y_roots(x):
                    pts.append(SurfacePoint(x, y, 0.0))
        else:
            p_c = np.asarray(H[:3])
            q_c = np.asarray(H[3:])
            xs = []
            for sign in (+1, -1):
                xs.extend(_roots_ascending(npp.polysub(q_c, sign * 0.5 * p_c)))
            for x in xs:
                lam0 = np.sqrt(-self._p(x) / 2)
                for y in self.base.y_roots(x):
                    for lam in (lam0, -lam0):
                        pts.append(SurfacePoint(x, y, lam))
        pts.sort(key=lambda p: _sort_key(p.x) + _sort_key(p.y) + _sort_key(p.lam))
        self._check_collisions(pts)
        return pts

    def _check_collisions(self, pts):
        tol = DOUBLE_ROOT_RTOL * (1.0 + max(abs(p.x) for p in pts))
        coords = [(p.x, p.y, p.lam) for p in pts]
        for i in range(len(coords)):
            for j in range(i + 1, len(coords)):
                d = sum(abs(a - b) for a, b in zip(coords[i], coords[j]))
                if d < tol:
                    raise DegenerateCurve("branch points collide")
        if self.family == SO4:
            sing_x = _roots_ascending(np.asarray(self.hams[3:]))
            for p in pts:
                for sx in sing_x:
                    if abs(p.x - sx) < tol:
                        raise DegenerateCurve(
                            "branch point collides with a singular point")

    def singular_points(self):
        """Nodes of the so4 curve: lam = 0 over the roots of q."""
        if self.family != SO4:
            raise InconsistentGeometry("only the so4 curve is singular")
        xs = _roots_ascending(np.asarray(self.hams[3:]))
        if _has_double_root(xs):
            raise DegenerateCurve("q has a double root")
        out = []
        for x in xs:
            for y in self.base.y_roots(x):
                out.append((x, y))
        return out

    def genus_check(self):
        """Genus of the normalized spectral curve via Riemann-Hurwitz.

        Uses the covering of the base curve: 2g^ - 2 = d(2g - 2) + B with
        g = 2, d the covering degree and B the branch-point count found
        numerically.
        """
        try:
            n_branch = len(self.branch_points())
        except DegenerateCurve as exc:
            raise InconsistentGeometry(str(exc)) from exc
        deg = 2 if self.family == SL2 else 4
        expected = 4 if self.family == SL2 else 16
        if n_branch != expected:
            raise InconsistentGeometry(
                f"found {n_branch} branch points, expected {expected}")
        two_g_hat = deg * (2 * 2 - 2) + n_branch + 2
        if two_g_hat % 2:
            raise InconsistentGeometry("Riemann-Hurwitz count is odd")
        return two_g_hat // 2

    # ------------------------------------------------------------------
    # lifting and involutions

    def lift_x(self, x, clearance=None):
        """All points of the curve over x (= the fiber), with a clearance
        guard against branch x-values."""
        if clearance is None:
            clearance = 1e-6 * self.x_spread
        if self.clearance_to_branch(x) < clearance:
            raise NearBranchPoint(f"x = {x} is within {clearance} of a "
                                  "branch x-value")
        return self.fiber(x)

    def involution_images(self, point):
        """(tau1, tau2, tau) images of a point, with recomputed sheet ids."""
        x, y, lam = point.x, point.y, point.lam
        out = []
        for yy, ll in ((y, -lam), (-y, lam), (-y, -lam)):
            img = SurfacePoint(x, yy, ll)
            out.append(SurfacePoint(x, yy, ll, sheet_id=self.sheet_of(img)))
        return tuple(out)

    # ------------------------------------------------------------------
    # asymptotics at x = infinity

    def infinity_mu_values(self):
        """Asymptotic slopes mu = lim lam/x labelling the points over
        x = infinity, in deterministic order; Q0 is the first."""
        H = self.hams
        if self.family == SL2:
            mu = np.sqrt(-complex(H[2]))
            vals = [mu, -mu]
        else:
            vals = list(np.roots([1.0, 0.0, H[2], 0.0, H[5] ** 2]))
        return sorted(vals, key=_sort_key)

    def point_near_infinity(self, q_index, z):
        """The curve point on the chart of the q_index-th infinity point at
        local parameter z (x = z**-2), for |z| small.

        The chart is oriented by y ~ +z**-5 at z > 0 real; the returned
        point is exact (polished onto the curve).
        """
        mu = self.infinity_mu_values()[q_index]
        x = z ** (-2)
        # y from the chart orientation: y = z^-5 * sqrt(z^10 P5(z^-2)),
        # principal branch; z^10 P5(1/z^2) -> 1 as z -> 0.
        w = z ** 10 * self.base.p5(x)
        y = z ** (-5) * np.sqrt(w)
        lam = min(self.lam_roots(x), key=lambda l: abs(l - mu * x))
        if abs(lam - mu * x) > 0.5 * abs(x) * min(
                abs(m1 - m2) for i, m1 in enumerate(self.infinity_mu_values())
                for m2 in self.infinity_mu_values()[i + 1:]):
            raise NearBranchPoint("z too large to identify the infinity chart")
        return SurfacePoint(x, y, lam)
