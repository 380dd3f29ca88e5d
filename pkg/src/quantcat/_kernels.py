"""Integer kernels shared by every construction.

All lattice data lives in small dense tables indexed by global element id
(int32): `comp[v, u]` = v after u, `join`/`meet`, `leq` (uint8), and the
brute-forced residual tables `lda`/`rda`.  The four hot loops below are the
only places the package iterates over matrix entries:

  rel_compose   (psi . phi)[x, z] = sup_y comp[psi[y, z], phi[x, y]]
  rel_lda       (theta / phi)[y, z] = inf_x lda[theta[x, z], phi[x, y]]
  rel_rda       (psi \\ theta)[x, y] = inf_z rda[psi[y, z], theta[x, z]]
  pair_hom      hom[i, j] = inf_x table[vecs[j, x], vecs[i, x]]
  enum_vectors  backtracking enumeration of constraint-closed vectors

Each has a numba @njit build and a pure-numpy build; QUANTCAT_NUMBA=0
forces the numpy path (see benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import numpy as np

from .config import numba_enabled

NUMBA_ACTIVE = numba_enabled()


# ---------------------------------------------------------------------------
# numpy reference implementations
# ---------------------------------------------------------------------------

def _rel_compose_np(phi, psi, comp, join, init):
    out = init.copy()
    for y in range(phi.shape[1]):
        step = comp[np.ix_(psi[y, :], phi[:, y])].T  # [x, z]
        out = join[out, step]
    return out


def _rel_lda_np(theta, phi, lda, meet, init):
    out = init.copy()
    for x in range(theta.shape[0]):
        step = lda[np.ix_(theta[x, :], phi[x, :])].T  # [y, z]
        out = meet[out, step]
    return out


def _rel_rda_np(psi, theta, rda, meet, init):
    out = init.copy()
    for z in range(psi.shape[1]):
        step = rda[np.ix_(psi[:, z], theta[:, z])].T  # [x, y]
        out = meet[out, step]
    return out


def _pair_hom_np(vecs, table, meet, init):
    out = init.copy()
    for x in range(vecs.shape[1]):
        col = vecs[:, x]
        step = table[np.ix_(col, col)].T  # [i, j] = table[col[j], col[i]]
        out = meet[out, step]
    return out


def _enum_vectors_np(cand_flat, cand_off, a, comp, leq, cap, ops_budget):
    """Level-by-level expansion; returns (vectors, count, status).

    status: 0 done, 1 cap exceeded, 2 work budget exhausted.  Candidate
    lists are ascending, so rows come out in lexicographic order, matching
    the DFS kernel's visiting order.
    """
    n = cand_off.shape[0] - 1
    prefixes = np.zeros((1, 0), dtype=np.int32)
    ops = 0
    for k in range(n):
        cands = cand_flat[cand_off[k]:cand_off[k + 1]]
        m = prefixes.shape[0]
        ops += (m * cands.shape[0]) * max(k, 1)
        if ops > ops_budget:
            return prefixes[:0], m, 2
        ok = np.ones((m, cands.shape[0]), dtype=bool)
        for i in range(k):
            fwd = comp[cands, a[i, k]]
            ok &= leq[fwd[None, :], prefixes[:, i][:, None]].astype(bool)
            bwd = comp[prefixes[:, i], a[k, i]]
            ok &= leq[bwd[:, None], cands[None, :]].astype(bool)
        ip, ic = np.nonzero(ok)
        prefixes = np.concatenate(
            [prefixes[ip], cands[ic][:, None]], axis=1, dtype=np.int32)
        # Intermediate prefixes can only die later, so exceeding a
        # generous multiple of the cap is treated as a budget abort.
        if k < n - 1 and prefixes.shape[0] > 8 * cap + 8:
            return prefixes[:0], prefixes.shape[0], 2
        if k == n - 1 and prefixes.shape[0] > cap:
            return prefixes[:0], prefixes.shape[0], 1
    return prefixes, prefixes.shape[0], 0


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if NUMBA_ACTIVE:
    from numba import njit

    @njit(cache=True, nogil=True)
    def _rel_compose_nb(phi, psi, comp, join, init):
        nx, ny = phi.shape
        nz = psi.shape[1]
        out = init.copy()
        for x in range(nx):
            for z in range(nz):
                acc = out[x, z]
                for y in range(ny):
                    acc = join[acc, comp[psi[y, z], phi[x, y]]]
                out[x, z] = acc
        return out

    @njit(cache=True, nogil=True)
    def _rel_lda_nb(theta, phi, lda, meet, init):
        nx, nz = theta.shape
        ny = phi.shape[1]
        out = init.copy()
        for y in range(ny):
            for z in range(nz):
                acc = out[y, z]
                for x in range(nx):
                    acc = meet[acc, lda[theta[x, z], phi[x, y]]]
                out[y, z] = acc
        return out

    @njit(cache=True, nogil=True)
    def _rel_rda_nb(psi, theta, rda, meet, init):
        ny, nz = psi.shape
        nx = theta.shape[0]
        out = init.copy()
        for x in range(nx):
            for y in range(ny):
                acc = out[x, y]
                for z in range(nz):
                    acc = meet[acc, rda[psi[y, z], theta[x, z]]]
                out[x, y] = acc
        return out

    @njit(cache=True, nogil=True)
    def _pair_hom_nb(vecs, table, meet, init):
        nv, nx = vecs.shape
        out = init.copy()
        for i in range(nv):
            for j in range(nv):
                acc = out[i, j]
                for x in range(nx):
                    acc = meet[acc, table[vecs[j, x], vecs[i, x]]]
                out[i, j] = acc
        return out

    @njit(cache=True, nogil=True)
    def _enum_dfs_nb(cand_flat, cand_off, a, comp, leq, cap, ops_budget,
                     out, fill):
        n = cand_off.shape[0] - 1
        cur = np.zeros(n, dtype=np.int32)
        idx = np.zeros(n, dtype=np.int64)
        count = 0
        ops = 0
        k = 0
        while k >= 0:
            lo = cand_off[k]
            hi = cand_off[k + 1]
            advanced = False
            while idx[k] < hi - lo:
                c = cand_flat[lo + idx[k]]
                idx[k] += 1
                ops += k + 1
                if ops > ops_budget:
                    return count, ops, 2
                ok = True
                for i in range(k):
                    si = cur[i]
                    if leq[comp[c, a[i, k]], si] == 0:
                        ok = False
                        break
                    if leq[comp[si, a[k, i]], c] == 0:
                        ok = False
                        break
                if ok:
                    cur[k] = c
                    advanced = True
                    break
            if not advanced:
                k -= 1
                continue
            if k == n - 1:
                if fill:
                    out[count, :] = cur
                count += 1
                if count > cap:
                    return count, ops, 1
            else:
                k += 1
                idx[k] = 0
        return count, ops, 0

    def _enum_vectors_nb(cand_flat, cand_off, a, comp, leq, cap, ops_budget):
        n = cand_off.shape[0] - 1
        dummy = np.zeros((1, n), dtype=np.int32)
        count, _, status = _enum_dfs_nb(
            cand_flat, cand_off, a, comp, leq, cap, ops_budget, dummy, False)
        if status != 0:
            return dummy[:0], count, status
        out = np.zeros((count, n), dtype=np.int32)
        if count:
            _enum_dfs_nb(cand_flat, cand_off, a, comp, leq, cap,
                         ops_budget, out, True)
        return out, count, 0

    rel_compose = _rel_compose_nb
    rel_lda = _rel_lda_nb
    rel_rda = _rel_rda_nb
    pair_hom = _pair_hom_nb
    enum_vectors = _enum_vectors_nb
else:
    rel_compose = _rel_compose_np
    rel_lda = _rel_lda_np
    rel_rda = _rel_rda_np
    pair_hom = _pair_hom_np
    enum_vectors = _enum_vectors_np

# The reference implementations stay importable for the equivalence tests
# and the benchmark regardless of the selected backend.
numpy_impls = {
    "rel_compose": _rel_compose_np,
    "rel_lda": _rel_lda_np,
    "rel_rda": _rel_rda_np,
    "pair_hom": _pair_hom_np,
    "enum_vectors": _enum_vectors_np,
}

active_impls = {
    "rel_compose": rel_compose,
    "rel_lda": rel_lda,
    "rel_rda": rel_rda,
    "pair_hom": pair_hom,
    "enum_vectors": enum_vectors,
}
