"""Numerical Hitchin systems on genus-2 hyperelliptic curves.

The toolkit defines the sl2 and so4 systems through their spectral
curves and separating variables, and computes trajectories two ways:
direct Hamiltonian ODE flow, and theta-function inversion of the
Abel-Prym map.  Agreement of the two is the central deliverable.
"""

from .curves import SL2, SO4, BaseCurve, SpectralCurve, SurfacePoint

__all__ = ["SL2", "SO4", "BaseCurve", "SpectralCurve", "SurfacePoint"]
__version__ = "0.1.0"
