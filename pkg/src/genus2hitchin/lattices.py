"""Integer-lattice tools used by the period machinery.

Period vectors of candidate chains generate a rank-2h lattice in
C^h = R^{2h}.  From numerically known generators we recover

1. a short integer basis of the generated lattice (LLL with an identity
   embedding, so integer combinations are tracked exactly),
2. the integer alternating form compatible with the complex structure
   (the polarization), found as an integer point of a numerically known
   linear subspace,
3. a symplectic normal form of that pairing over the integers.

Everything here is plain float linear algebra plus exact integer
bookkeeping; results are certified downstream by the Riemann bilinear
relations.
"""

from __future__ import annotations

import numpy as np

from .errors import CycleSelectionFailure


def lll_reduce(basis, delta=0.99):
    """LLL on the rows of ``basis`` (float matrix, full row rank).

    Incremental Gram-Schmidt bookkeeping (Cohen, Alg. 2.6.3); returns the
    reduced basis rows (same lattice).
    """
    b = np.atleast_2d(np.asarray(basis, dtype=float)).copy()
    n = b.shape[0]
    mu = np.zeros((n, n))
    norm2 = np.zeros(n)
    star = np.zeros_like(b)
    for i in range(n):
        v = b[i].copy()
        for j in range(i):
            mu[i, j] = (b[i] @ star[j]) / norm2[j] if norm2[j] > 0 else 0.0
            v -= mu[i, j] * star[j]
        star[i] = v
        norm2[i] = v @ v

    def size_reduce(k, j):
        q = round(mu[k, j])
        if q != 0:
            b[k] -= q * b[j]
            mu[k, : j] -= q * mu[j, : j]
            mu[k, j] -= q

    k = 1
    guard = 0
    max_ops = 500 * n * n + 10000
    while k < n:
        guard += 1
        if guard > max_ops:
            raise CycleSelectionFailure("LLL failed to terminate")
        size_reduce(k, k - 1)
        if norm2[k] >= (delta - mu[k, k - 1] ** 2) * norm2[k - 1]:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1
            continue
        # swap rows k-1, k and patch the GSO data
        nu = mu[k, k - 1]
        big = norm2[k] + nu * nu * norm2[k - 1]
        if big <= 0:
            raise CycleSelectionFailure("LLL met a zero vector")
        mu[k, k - 1] = nu * norm2[k - 1] / big
        new_norm_k = norm2[k - 1] * norm2[k] / big
        norm2[k - 1] = big
        norm2[k] = new_norm_k
        b[[k - 1, k]] = b[[k, k - 1]]
        mu[[k - 1, k], : k - 1] = mu[[k, k - 1], : k - 1]
        if k + 1 < n:
            t = mu[k + 1:, k].copy()
            mu[k + 1:, k] = mu[k + 1:, k - 1] - nu * t
            mu[k + 1:, k - 1] = t + mu[k, k - 1] * mu[k + 1:, k]
        k = max(k - 1, 1)
    return b


def lattice_basis_from_generators(gens, rank, zero_tol=1e-6):
    """Basis of the lattice generated by the rows of ``gens`` (real matrix).

    Uses the identity-embedding trick: reduce rows [eps*e_i | v_i]; rows
    whose v-part collapses are integer relations, the rest project to a
    basis.  Returns (basis_rows, combos) where combos are the integer
    coefficients of each basis row in terms of the generators.
    """
    V = np.atleast_2d(np.asarray(gens, dtype=float))
    n, m = V.shape
    scale = np.max(np.abs(V)) or 1.0
    V = V / scale
    eps = 1e-4
    M = np.hstack([eps * np.eye(n), V])
    R = lll_reduce(M)
    combos = np.rint(R[:, :n] / eps).astype(int)
    vparts = combos @ V  # exact recombination, avoids LLL float drift
    norms = np.linalg.norm(vparts, axis=1)
    keep = norms > zero_tol
    basis = vparts[keep]
    combos = combos[keep]
    if len(basis) < rank:
        raise CycleSelectionFailure(
            f"lattice rank {len(basis)} < expected {rank}")
    if len(basis) > rank:
        # more rows than the real rank can support: generators were not
        # numerically consistent
        s = np.linalg.svd(basis, compute_uv=False)
        if s[rank - 1] < 1e-8 or (len(s) > rank and s[rank] > 1e-6):
            raise CycleSelectionFailure(
                "generator periods are not consistent with a rank-2h lattice")
        raise CycleSelectionFailure(
            f"lattice appears to have rank {len(basis)} != {rank}")
    return basis * scale, combos


def integer_points_near_subspace(null_basis, count, weight=1e8,
                                 resid_tol=1e-6):
    """Short integer vectors close to the span of ``null_basis`` columns.

    ``null_basis``: (n, k) orthonormal columns spanning the target space.
    Returns up to ``count`` independent integer vectors, sorted by norm.
    """
    n, k = null_basis.shape
    # Orthonormal basis of the complement
    q, _ = np.linalg.qr(null_basis, mode="complete")
    comp = q[:, k:]
    M = np.hstack([np.eye(n), weight * comp])
    R = lll_reduce(M)
    cands = []
    for row in R:
        z = np.rint(row[:n]).astype(int)
        if not z.any():
            continue
        resid = np.linalg.norm(comp.T @ z)
        if resid < resid_tol:
            cands.append((np.linalg.norm(z), tuple(z)))
    cands.sort()
    out = []
    for _, z in cands:
        z = np.array(z, dtype=int)
        trial = out + [z]
        if np.linalg.matrix_rank(np.array(trial)) == len(trial):
            out.append(z)
        if len(out) == count:
            break
    return out


def _antisym_from_vec(v, n):
    E = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    E[iu] = v
    return E - E.T


def _vec_from_antisym(E):
    return E[np.triu_indices(E.shape[0], k=1)]


def compatible_alternating_form(cmat, search_range=2):
    """Integer alternating form E with c^T E c = E and E(c u, v) > 0.

    ``cmat`` is the real matrix of multiplication by i in lattice
    coordinates (c^2 = -1).  Returns the primitive positively-oriented E
    of smallest norm found.  Raises if no positive form exists in the
    searched cone.
    """
    n = cmat.shape[0]
    dim = n * (n - 1) // 2
    rows = []
    for idx in range(dim):
        v = np.zeros(dim)
        v[idx] = 1.0
        E = _antisym_from_vec(v, n)
        rows.append(_vec_from_antisym(cmat.T @ E @ cmat - E))
    A = np.array(rows).T  # maps vec(E) -> vec(constraint)
    u, s, vt = np.linalg.svd(A)
    null_dim = int(np.sum(s < 1e-7 * s[0]))
    if null_dim == 0:
        raise CycleSelectionFailure("no compatible alternating form")
    null = vt[-null_dim:].T  # (dim, k) orthonormal columns
    gens = integer_points_near_subspace(null, null_dim)
    if not gens:
        raise CycleSelectionFailure("no integer compatible form found")

    def positivity(E):
        S = cmat.T @ E
        S = 0.5 * (S + S.T)
        w = np.linalg.eigvalsh(S)
        return w.min(), w.max()

    best = None
    from itertools import product as iproduct
    span = range(-search_range, search_range + 1)
    for coeffs in iproduct(span, repeat=len(gens)):
        if not any(coeffs):
            continue
        v = sum(c * g for c, g in zip(coeffs, gens))
        g = np.gcd.reduce(np.abs(v).astype(int))
        if g > 1:
            v = v // g
        E = _antisym_from_vec(v.astype(float), n)
        lo, hi = positivity(E)
        if lo < -1e-9 and hi < 1e-9:
            E, lo = -E, -hi
        elif lo < 1e-9:
            continue
        if lo > 1e-9:
            norm = np.linalg.norm(v)
            if best is None or norm < best[0] - 1e-12:
                best = (norm, E)
    if best is None:
        raise CycleSelectionFailure(
            "no positive compatible form in the searched cone")
    return np.rint(best[1]).astype(int)


def symplectic_normal_form(E):
    """Integer congruence U^T E U = diag of blocks [[0, d], [-d, 0]].

    ``E`` integer, alternating, nondegenerate.  Returns (U, d) with U in
    GL(2h, Z) and the block pivots d (positive integers).  The new basis
    is ordered (a_1, b_1, a_2, b_2, ...) in the columns of U.
    """
    E = np.array(E, dtype=object)
    n = E.shape[0]
    U = np.eye(n, dtype=object)

    def col_op(j, k, q):  # basis_j += q * basis_k
        E[:, j] += q * E[:, k]
        E[j, :] += q * E[k, :]
        U[:, j] += q * U[:, k]

    def swap(j, k):
        E[:, [j, k]] = E[:, [k, j]]
        E[[j, k], :] = E[[k, j], :]
        U[:, [j, k]] = U[:, [k, j]]

    for blk in range(0, n, 2):
        while True:
            entries = [(abs(E[i, j]), i, j)
                       for i in range(blk, n) for j in range(i + 1, n)
                       if E[i, j] != 0]
            if not entries:
                raise CycleSelectionFailure("alternating form is degenerate")
            _, pi, pj = min(entries)
            if pi != blk:
                swap(blk, pi)
            if pj != blk + 1:
                swap(blk + 1, pj)
            d = E[blk, blk + 1]
            clean = True
            for j in range(blk + 2, n):
                q = E[blk, j] // d
                if q != 0:
                    col_op(j, blk + 1, -q)
                if E[blk, j] != 0:
                    clean = False
            for j in range(blk + 2, n):
                q = E[blk + 1, j] // d
                if q != 0:
                    col_op(j, blk, q)
                if E[blk + 1, j] != 0:
                    clean = False
            if clean:
                break
        if E[blk, blk + 1] < 0:
            swap(blk, blk + 1)

    d = [int(E[i, i + 1]) for i in range(0, n, 2)]
    if any(v <= 0 for v in d):
        raise CycleSelectionFailure("symplectic reduction failed")
    return np.array(U, dtype=int), d
