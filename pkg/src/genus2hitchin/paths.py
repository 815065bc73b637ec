"""Piecewise paths in the complex x-plane.

An :class:`XPath` is an ordered chain of line and arc segments together
with the clearance it is supposed to keep from branch x-values.  Builders
construct straight paths with automatic circular detours, ring loops
around a point, and petal loops used for monodromy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Line:
    z0: complex
    z1: complex

    def point(self, t):
        return self.z0 + (self.z1 - self.z0) * t

    def dpoint(self, t):
        return self.z1 - self.z0

    @property
    def length(self):
        return abs(self.z1 - self.z0)

    def reversed(self):
        return Line(self.z1, self.z0)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    a0: float
    a1: float  # may exceed a0 by any amount; sign fixes orientation

    def point(self, t):
        a = self.a0 + (self.a1 - self.a0) * t
        return self.center + self.radius * np.exp(1j * a)

    def dpoint(self, t):
        a = self.a0 + (self.a1 - self.a0) * t
        return self.radius * 1j * (self.a1 - self.a0) * np.exp(1j * a)

    @property
    def length(self):
        return abs(self.a1 - self.a0) * self.radius

    def reversed(self):
        return Arc(self.center, self.radius, self.a1, self.a0)


@dataclass(frozen=True)
class XPath:
    """Contiguous chain of segments with a clearance contract."""

    segments: tuple
    clearance: float = 0.0

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        for a, b in zip(segs, segs[1:]):
            gap = abs(a.point(1.0) - b.point(0.0))
            scale = 1.0 + abs(a.point(1.0))
            if gap > 1e-9 * scale:
                raise ValueError(f"path segments not contiguous (gap {gap})")

    @property
    def start(self):
        return self.segments[0].point(0.0) if self.segments else None

    @property
    def end(self):
        return self.segments[-1].point(1.0) if self.segments else None

    @property
    def length(self):
        return sum(s.length for s in self.segments)

    def reversed(self):
        return XPath(tuple(s.reversed() for s in reversed(self.segments)),
                     self.clearance)

    def __add__(self, other):
        return XPath(self.segments + other.segments,
                     min(self.clearance, other.clearance)
                     if self.segments and other.segments else
                     max(self.clearance, other.clearance))

    def is_closed(self, tol=1e-9):
        return abs(self.start - self.end) <= tol * (1.0 + abs(self.start))


def line_path(z0, z1, clearance=0.0):
    return XPath((Line(complex(z0), complex(z1)),), clearance)


def circle_path(center, radius, a0=0.0, turns=1.0, clearance=0.0):
    """Circular loop around center; turns may be negative or fractional."""
    return XPath((Arc(complex(center), float(radius), a0,
                      a0 + 2 * np.pi * turns),), clearance)


def _seg_point_distance(z0, z1, b):
    """Distance from b to the segment [z0, z1] and the projection parameter."""
    d = z1 - z0
    L2 = abs(d) ** 2
    if L2 == 0:
        return abs(b - z0), 0.0
    t = ((b - z0) * np.conj(d)).real / L2
    tc = min(1.0, max(0.0, t))
    return abs(b - (z0 + d * tc)), t


def straight_with_detours(z0, z1, avoid, clearance, ccw=True):
    """Straight segment from z0 to z1 with circular detours of radius
    ``clearance`` around every avoid point closer than that to the segment.

    Endpoints themselves must be clear.  Detours always go the same way
    (counterclockwise by default) for determinism.
    """
    z0, z1 = complex(z0), complex(z1)
    d = z1 - z0
    L = abs(d)
    if L == 0:
        return XPath((Line(z0, z1),), clearance)
    u = d / L
    hits = []
    for b in avoid:
        dist, t = _seg_point_distance(z0, z1, b)
        if dist < clearance * 0.999 and 0.0 < t < 1.0:
            if abs(b - z0) < clearance or abs(b - z1) < clearance:
                raise ValueError("path endpoint inside a clearance disk")
            hits.append((t, complex(b)))
    hits.sort(key=lambda tb: tb[0])

    segs = []
    cur = z0
    for _, b in hits:
        # chord of the clearance circle cut by the line through z0, z1
        s = ((b - z0) * np.conj(u)).real
        perp = b - (z0 + u * s)
        half = np.sqrt(max(clearance ** 2 - abs(perp) ** 2, 0.0))
        p_in = z0 + u * (s - half)
        p_out = z0 + u * (s + half)
        # project entry/exit onto the circle exactly
        a_in = np.angle(p_in - b)
        a_out = np.angle(p_out - b)
        if ccw:
            while a_out <= a_in:
                a_out += 2 * np.pi
        else:
            while a_out >= a_in:
                a_out -= 2 * np.pi
        p_in = b + clearance * np.exp(1j * a_in)
        p_out = b + clearance * np.exp(1j * a_out)
        if abs(p_in - cur) > 0:
            segs.append(Line(cur, p_in))
        segs.append(Arc(b, clearance, a_in, a_out))
        cur = p_out
    if abs(z1 - cur) > 0 or not segs:
        segs.append(Line(cur, z1))
    return XPath(tuple(segs), clearance)


def petal(base, center, ring_radius, avoid, clearance):
    """Loop from base around center: approach, full ccw circle, return.

    The approach keeps clear of every other avoid point.
    """
    center = complex(center)
    others = [b for b in avoid if abs(b - center) > 1e-12 * (1 + abs(center))]
    entry = center + ring_radius * (base - center) / abs(base - center)
    go = straight_with_detours(base, entry, others, clearance)
    a0 = np.angle(entry - center)
    loop = circle_path(center, ring_radius, a0=a0, turns=1.0,
                       clearance=clearance)
    return go + loop + go.reversed()
