"""Homology machinery over the x-sphere: monodromy, candidate chains,
the period lattice, and a symplectic chain basis.

Strategy
--------
Petal loops around every branch x-value are continued and integrated once
per starting sheet.  Words in petals that close up (or that end on the
``tau = tau1 tau2`` image of their starting sheet - "twisted" chains,
which are closed loops on the quotient surface where the theta machinery
lives) provide a pool of period vectors.  From the pool we recover

* an integer basis of the generated period lattice,
* the compatible integer alternating form (the intersection pairing, up
  to overall scale - no geometric crossing counting is needed),
* a symplectic basis (a-cycles, b-cycles) by integer reduction.

The Riemann bilinear relations (tau symmetric, Im tau > 0) certify the
result downstream; a failure raises and triggers a wider candidate pool.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .differentials import DifferentialBasis
from .errors import CycleSelectionFailure
from .integration import integrate_differentials
from .lattices import (compatible_alternating_form,
                       lattice_basis_from_generators, symplectic_normal_form)
from .paths import petal

POOL_CAP = 200


@dataclass(frozen=True)
class Petal:
    """One loop around a branch x-value with its monodromy and integrals."""

    center: complex
    path: object
    perm: tuple           # sheet permutation (start -> end)
    values: np.ndarray    # (n_sheets, h) integrals per starting sheet


@dataclass(frozen=True)
class ChainRecord:
    """A chain assembled from petals: closed loop or tau-twisted chain."""

    word: tuple           # petal indices, applied left to right
    start_sheet: int
    end_sheet: int
    twisted: bool
    period: np.ndarray    # (h,) complex


@dataclass
class CycleSet:
    """Petal data plus a symplectic basis of the period lattice."""

    curve: object
    base_x: complex
    clearance: float
    petals: list
    tau_map: tuple
    tau1_map: tuple
    pool: list = field(default_factory=list)
    basis: np.ndarray = None          # (2h, h) lattice basis period vectors
    basis_combos: np.ndarray = None   # integer combos of pool chains
    form: np.ndarray = None           # intersection form on the basis
    transform: np.ndarray = None      # symplectic change of basis
    type_d: list = None               # polarization type (block pivots)
    a_vectors: np.ndarray = None      # (h, h) a-cycle period vectors
    b_vectors: np.ndarray = None      # (h, h) b-cycle period vectors

    # -- word helpers ---------------------------------------------------

    def word_perm(self, word):
        n = len(self.petals[0].perm)
        s = list(range(n))
        for w in word:
            p = self.petals[w].perm
            s = [p[i] for i in s]
        return tuple(s)

    def word_value(self, word, sheet):
        total = np.zeros(self.curve.h, dtype=complex)
        s = sheet
        for w in word:
            total = total + self.petals[w].values[s]
            s = self.petals[w].perm[s]
        return total, s

    def steering_word(self, target_sheet, start_sheet=0):
        """Shortest petal word whose monodromy maps start to target."""
        if target_sheet == start_sheet:
            return ()
        seen = {start_sheet: ()}
        queue = deque([start_sheet])
        while queue:
            s = queue.popleft()
            for k, pet in enumerate(self.petals):
                s2 = pet.perm[s]
                if s2 not in seen:
                    seen[s2] = seen[s] + (k,)
                    if s2 == target_sheet:
                        return seen[s2]
                    queue.append(s2)
        raise CycleSelectionFailure("monodromy is not transitive")


def _involution_sheet_map(curve, x_base, which):
    fib = curve.fiber(x_base)
    out = []
    for p in fib:
        if which == "tau1":
            img = (p.y, -p.lam)
        else:
            img = (-p.y, -p.lam)
        dist = [abs(q.y - img[0]) + abs(q.lam - img[1]) for q in fib]
        out.append(int(np.argmin(dist)))
    if sorted(out) != list(range(len(fib))):
        raise CycleSelectionFailure("involution does not permute the fiber")
    return tuple(out)


def default_base_point(curve):
    vals = curve.x_avoid_values
    centroid = complex(np.mean(vals))
    radius = 2.2 * max(1.0, max(abs(v - centroid) for v in vals))
    return centroid + radius * np.exp(0.7391j)


def build_petals(curve, base_x=None, abs_tol=1e-11):
    """Continue and integrate every petal loop once per starting sheet."""
    if base_x is None:
        base_x = default_base_point(curve)
    clear = 0.25 * curve.min_branch_separation()
    basis = DifferentialBasis(curve)
    fiber = curve.fiber(base_x)
    petals = []
    for b in curve.x_branch_values:
        path = petal(base_x, b, clear, curve.x_avoid_values, clear)
        vals = np.zeros((len(fiber), curve.h), dtype=complex)
        perm = np.empty(len(fiber), dtype=int)
        for s, pt in enumerate(fiber):
            v, end = integrate_differentials(curve, basis.values, path, pt,
                                             abs_tol=abs_tol)
            vals[s] = v
            perm[s] = end.sheet_id
        if sorted(perm.tolist()) != list(range(len(fiber))):
            raise CycleSelectionFailure("petal monodromy is not a permutation")
        petals.append(Petal(complex(b), path, tuple(int(i) for i in perm),
                            vals))
    return base_x, clear, petals


def _generate_pool(cs, max_len):
    """Closed and twisted chains from petal words up to the given length."""
    n_sheets = len(cs.petals[0].perm)
    n_pet = len(cs.petals)
    pool = []
    seen = set()

    def consider(word):
        for s in range(n_sheets):
            val, end = cs.word_value(word, s)
            if end == s:
                kind = False
            elif end == cs.tau_map[s]:
                kind = True
            else:
                continue
            key = (word, s)
            if key in seen:
                continue
            seen.add(key)
            pool.append(ChainRecord(word, s, end, kind, val))

    words = [(k,) for k in range(n_pet)]
    consider_all = list(words)
    for _ in range(max_len - 1):
        consider_all = [w + (k,) for w in consider_all for k in range(n_pet)
                        if not (len(w) >= 1 and w[-1] == k)]
        words.extend(consider_all)
    for w in words:
        if len(pool) >= POOL_CAP:
            break
        consider(w)
    return pool


def _dedupe_rows(pool, scale):
    rows, keep = [], []
    for rec in pool:
        v = rec.period
        if np.max(np.abs(v)) < 1e-8 * scale:
            continue
        sig = tuple(np.round(v / scale, 7)) + tuple(np.round(-v / scale, 7))
        dup = False
        for r in rows:
            if np.max(np.abs(r - v)) < 1e-7 * scale or \
               np.max(np.abs(r + v)) < 1e-7 * scale:
                dup = True
                break
        if not dup:
            rows.append(v)
            keep.append(rec)
    return keep


def build_cycles(curve, base_x=None, abs_tol=1e-11):
    """Full pipeline: petals, pool, lattice, intersection form, basis."""
    base_x, clear, petals = build_petals(curve, base_x, abs_tol)
    cs = CycleSet(curve, base_x, clear, petals,
                  _involution_sheet_map(curve, base_x, "tau"),
                  _involution_sheet_map(curve, base_x, "tau1"))
    h = curve.h
    for max_len in (2, 3):
        cs.pool = _generate_pool(cs, max_len)
        kept = _dedupe_rows(cs.pool, max(1.0, curve.x_spread))
        if len(kept) < 2 * h:
            continue
        try:
            _finish_basis(cs, kept)
            return cs
        except CycleSelectionFailure:
            if max_len == 3:
                raise
    raise CycleSelectionFailure(
        f"only {len(cs.pool)} candidate chains; need at least {2 * h}")


def _finish_basis(cs, kept):
    h = cs.curve.h
    rows = np.array([rec.period for rec in kept])
    gens = np.hstack([rows.real, rows.imag])
    basis_real, combos = lattice_basis_from_generators(gens, 2 * h)
    basis = basis_real[:, :h] + 1j * basis_real[:, h:]

    # complex structure in lattice coordinates
    Breal = np.vstack([basis.real.T, basis.imag.T])
    iB = 1j * basis
    iBreal = np.vstack([iB.real.T, iB.imag.T])
    cond = np.linalg.cond(Breal)
    if cond > 1e8:
        raise CycleSelectionFailure("period basis is ill-conditioned")
    cmat = np.linalg.solve(Breal, iBreal)

    E0 = compatible_alternating_form(cmat)
    U, type_d = symplectic_normal_form(E0)
    for attempt in range(2):
        Uf = U.astype(float)
        new_basis = Uf.T @ basis       # rows: a1, b1, a2, b2, ...
        a_vectors = new_basis[0::2]
        b_vectors = new_basis[1::2]
        tau = b_vectors @ np.linalg.inv(a_vectors)
        w_im = np.linalg.eigvalsh(0.5 * (tau.imag + tau.imag.T))
        if w_im.min() > 0:
            break
        if attempt == 0 and w_im.max() < 0:
            # orientation of the intersection form was inverted
            E0 = -E0
            U, type_d = symplectic_normal_form(E0)
            continue
        raise CycleSelectionFailure(
            "Im tau is not definite; wrong intersection form")

    cs.basis = basis
    cs.basis_combos = combos
    cs.form = E0
    cs.transform = U
    cs.type_d = type_d
    cs.a_vectors = a_vectors
    cs.b_vectors = b_vectors
