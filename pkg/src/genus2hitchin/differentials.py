"""Prym differential bases for the two spectral-curve families.

All differentials are of the form ``f(x, y, lam) dx`` and are odd under
both involutions ``lam -> -lam`` and ``y -> -y``:

* sl2:  ``omega_i = x^i dx / (2 y lam)``, i = 0, 1, 2
* so4:  ``omega_i = x^i q(x) dx / (y lam (4 lam^2 + 2 p))``, i = 0, 1, 2
        ``omega_{3+i} = lam^2 x^i dx / (y lam (4 lam^2 + 2 p))``, i = 0, 1, 2

The 1-form ``lam dx / y`` (the action generator) is holomorphic on the
spectral curve and expands exactly in the basis; its coefficient vector
and the coefficients of its Hamiltonian derivatives are provided here and
verified numerically by the period tests.
"""

from __future__ import annotations

import numpy as np

from .curves import SL2


class DifferentialBasis:
    """Evaluator for the h Prym differentials of a spectral curve."""

    def __init__(self, curve):
        self.curve = curve
        self.h = curve.h

    def values(self, x, y, lam):
        """Vector of f_j(x, y, lam) with omega_j = f_j dx."""
        if self.curve.family == SL2:
            inv = 1.0 / (2 * y * lam)
            return np.array([inv, x * inv, x * x * inv])
        p = self.curve._p(x)
        q = self.curve._q(x)
        den = 1.0 / (y * lam * (4 * lam * lam + 2 * p))
        xs = np.array([1.0, x, x * x], dtype=complex)
        return np.concatenate([q * den * xs, lam * lam * den * xs])

    def __call__(self, x, y, lam):
        return self.values(x, y, lam)

    def action_form(self, x, y, lam):
        """f with lam dz = f dx, i.e. f = lam / y."""
        return lam / y

    def action_coefficients(self):
        """c with lam dz = sum_j c_j omega_j, exact on the curve."""
        H = np.asarray(self.curve.hams)
        if self.curve.family == SL2:
            return -2.0 * H
        return np.concatenate([-4.0 * H[3:], -2.0 * H[:3]])

    def hamiltonian_derivative_coefficients(self):
        """Matrix C with d(lam dz)/dH_k = sum_j C[j, k] omega_j.

        Follows from d lam/dH_k = -(dR/dH_k)/(dR/dlam) on the curve.
        """
        h = self.h
        C = np.zeros((h, h), dtype=complex)
        if self.curve.family == SL2:
            for k in range(3):
                C[k, k] = -1.0
        else:
            for k in range(3):
                C[k + 3, k] = -1.0
            for k in range(3, 6):
                C[k - 3, k] = -2.0
        return C
