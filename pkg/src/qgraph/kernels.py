"""Hot kernels: secular matrix assembly and sigma_min scans over lambda grids.

Two interchangeable implementations live here. scan_sigma_jit is compiled by
numba when available; scan_sigma_numpy builds the whole grid of matrices in
chunks and runs batched SVDs. `scan_sigma` points at whichever path the
QGRAPH_NO_NUMBA env flag selects. Both return (sigma_min, sigma_max) arrays.

The per-edge solution basis is {f1, f2} with f1(x) = cos(sqrt(lambda) x) and
f2(x) = sin(sqrt(lambda) x)/sqrt(lambda), continued through lambda <= 0 by
cosh/sinh; both are entire in lambda and nothing degenerates as lambda -> 0.
Below zero that pair turns numerically parallel once kappa * l is large (both
traces ~ e^(kappa l)/2), which floors sigma_min/sigma_max at ~e^(-kappa l)
even at regular points and fakes rank drops deep in the scan window. Any edge
with kappa * l >= 1 therefore switches to the decaying pair
{e^(-kappa x), e^(-kappa (l - x))}, whose traces stay bounded by max(1, kappa);
that pair degenerates only as kappa -> 0, where the entire pair takes over.
Matrix rows follow the global endpoint slot order; columns are (2e, 2e+1).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .accel import HAS_NUMBA, njit
from .graph import END, BoundaryType, MetricGraph

KIND_COUPLED = 0
KIND_NEUMANN = 1
KIND_DIRICHLET = 2


@lru_cache(maxsize=256)
def prepare_structure(g: MetricGraph):
    """Flatten a graph into the integer arrays the scan kernels consume."""
    m = 2 * g.num_edges
    row_kind = np.zeros(m, dtype=np.int8)
    row_next = np.zeros(m, dtype=np.int32)
    slot_edge = np.zeros(m, dtype=np.int32)
    slot_end = np.zeros(m, dtype=np.int8)
    for v in g.sorted_vertices:
        slots = [g.slot_index[ref] for ref in v.order]
        for j, ref in enumerate(v.order):
            r = slots[j]
            slot_edge[r] = g.edge_index[ref[0]]
            slot_end[r] = 1 if ref[1] == END else 0
            if v.bc is BoundaryType.COUPLED and v.degree >= 2:
                row_kind[r] = KIND_COUPLED
                row_next[r] = slots[(j + 1) % v.degree]
            elif v.bc is BoundaryType.DIRICHLET:
                row_kind[r] = KIND_DIRICHLET
                row_next[r] = r
            else:
                row_kind[r] = KIND_NEUMANN
                row_next[r] = r
    lengths = np.array([e.length for e in g.edges], dtype=np.float64)
    return row_kind, row_next, slot_edge, slot_end, lengths


def edge_basis_traces(lam, lengths, entire: bool = False):
    """Per-edge basis traces, vectorized over edges.

    Returns eight arrays (f1_0, f2_0, d1_0, d2_0, f1_l, f2_l, d1_l, d2_l):
    values and inward derivatives (+f'(0), -f'(l)) of the two basis functions
    at both endpoints. `entire` forces the cosh/sinh pair for every edge, at
    the cost of the large-kappa conditioning; determinant identities are
    stated in that basis.
    """
    lengths = np.asarray(lengths, dtype=float)
    one = np.ones_like(lengths)
    zero = np.zeros_like(lengths)
    if lam < 0.0:
        kap = np.sqrt(-lam)
        kl = kap * lengths
        decay = np.logical_and(kl >= 1.0, not entire)
        es = np.exp(-np.where(decay, kl, 1.0))
        ch = np.cosh(np.where(decay, 0.0, kl))
        sh = np.sinh(np.where(decay, 0.0, kl))
        return (one, np.where(decay, es, 0.0),
                np.where(decay, -kap, 0.0), np.where(decay, kap * es, 1.0),
                np.where(decay, es, ch), np.where(decay, 1.0, sh / kap),
                np.where(decay, kap * es, -kap * sh),
                np.where(decay, -kap, -ch))
    if lam > 0.0:
        k = np.sqrt(lam)
        c, s = np.cos(k * lengths), np.sin(k * lengths)
        return one, zero, zero, one, c, s / k, k * s, -c
    return one, zero, zero, one, one, lengths.copy(), zero, -one


def build_matrix_grid_numpy(lams, row_kind, row_next, slot_edge, slot_end,
                            lengths, entire: bool = False):
    """Stack of secular matrices, shape (len(lams), 2E, 2E)."""
    lams = np.asarray(lams, dtype=float)
    n, m = lams.size, row_kind.size
    ne = lengths.size
    tabs = np.empty((8, n, ne))
    for i, lam in enumerate(lams):
        for t, arr in enumerate(edge_basis_traces(lam, lengths, entire)):
            tabs[t, i] = arr
    f10, f20, d10, d20, f1l, f2l, d1l, d2l = tabs
    out = np.zeros((n, m, m), dtype=np.complex128)

    def tr(slot):
        e = slot_edge[slot]
        if slot_end[slot]:
            return e, f1l[:, e], f2l[:, e]
        return e, f10[:, e], f20[:, e]

    def dv(slot):
        e = slot_edge[slot]
        if slot_end[slot]:
            return e, d1l[:, e], d2l[:, e]
        return e, d10[:, e], d20[:, e]

    for r in range(m):
        kind = row_kind[r]
        if kind == KIND_COUPLED:
            q = row_next[r]
            e, t1, t2 = tr(q)
            out[:, r, 2 * e] += t1
            out[:, r, 2 * e + 1] += t2
            e, t1, t2 = tr(r)
            out[:, r, 2 * e] -= t1
            out[:, r, 2 * e + 1] -= t2
            for slot in (r, q):
                e, g1, g2 = dv(slot)
                out[:, r, 2 * e] += 1j * g1
                out[:, r, 2 * e + 1] += 1j * g2
        elif kind == KIND_NEUMANN:
            e, g1, g2 = dv(r)
            out[:, r, 2 * e] += 1j * g1
            out[:, r, 2 * e + 1] += 1j * g2
        else:
            e, t1, t2 = tr(r)
            out[:, r, 2 * e] += t1
            out[:, r, 2 * e + 1] += t2
    return out


def scan_sigma_numpy(lams, row_kind, row_next, slot_edge, slot_end, lengths,
                     chunk: int = 2048):
    """Pure-numpy scan: batched SVDs over chunks of the grid."""
    lams = np.asarray(lams, dtype=float)
    smin = np.empty(lams.size)
    smax = np.empty(lams.size)
    for lo in range(0, lams.size, chunk):
        part = lams[lo:lo + chunk]
        mats = build_matrix_grid_numpy(part, row_kind, row_next,
                                       slot_edge, slot_end, lengths)
        # unit max-abs columns on the negative branch only: there the
        # hyperbolic entries grow like e^(kappa*l) and the sigma ratio
        # under-reads rank at deep lambda. Positive-branch matrices stay raw
        # so a full-matrix collapse (eigenvalue of multiplicity 2*E, e.g. a
        # one-edge cycle) remains visible as a dip of sigma_max itself.
        colmax = np.abs(mats).max(axis=1, keepdims=True)
        np.maximum(colmax, 1e-300, out=colmax)
        mats = np.where((part < 0.0)[:, None, None], mats / colmax, mats)
        s = np.linalg.svd(mats, compute_uv=False)
        smin[lo:lo + chunk] = s[:, -1]
        smax[lo:lo + chunk] = s[:, 0]
    return smin, smax


@njit(cache=True, nogil=True)
def _scan_sigma_compiled(lams, row_kind, row_next, slot_edge, slot_end, lengths):
    n = lams.size
    m = row_kind.size
    ne = lengths.size
    smin = np.empty(n)
    smax = np.empty(n)
    f10 = np.empty(ne)
    f20 = np.empty(ne)
    d10 = np.empty(ne)
    d20 = np.empty(ne)
    f1l = np.empty(ne)
    f2l = np.empty(ne)
    d1l = np.empty(ne)
    d2l = np.empty(ne)
    for i in range(n):
        lam = lams[i]
        if lam < 0.0:
            kap = np.sqrt(-lam)
            for e in range(ne):
                kl = kap * lengths[e]
                if kl >= 1.0:  # decaying pair, see module docstring
                    es = np.exp(-kl)
                    f10[e] = 1.0
                    f20[e] = es
                    d10[e] = -kap
                    d20[e] = kap * es
                    f1l[e] = es
                    f2l[e] = 1.0
                    d1l[e] = kap * es
                    d2l[e] = -kap
                else:
                    ch = np.cosh(kl)
                    sh = np.sinh(kl)
                    f10[e] = 1.0
                    f20[e] = 0.0
                    d10[e] = 0.0
                    d20[e] = 1.0
                    f1l[e] = ch
                    f2l[e] = sh / kap
                    d1l[e] = -kap * sh
                    d2l[e] = -ch
        elif lam > 0.0:
            k = np.sqrt(lam)
            for e in range(ne):
                c = np.cos(k * lengths[e])
                s = np.sin(k * lengths[e])
                f10[e] = 1.0
                f20[e] = 0.0
                d10[e] = 0.0
                d20[e] = 1.0
                f1l[e] = c
                f2l[e] = s / k
                d1l[e] = k * s
                d2l[e] = -c
        else:
            for e in range(ne):
                f10[e] = 1.0
                f20[e] = 0.0
                d10[e] = 0.0
                d20[e] = 1.0
                f1l[e] = 1.0
                f2l[e] = lengths[e]
                d1l[e] = 0.0
                d2l[e] = -1.0
        mat = np.zeros((m, m), dtype=np.complex128)
        for r in range(m):
            kind = row_kind[r]
            er = slot_edge[r]
            if slot_end[r]:
                vr1, vr2, dr1, dr2 = f1l[er], f2l[er], d1l[er], d2l[er]
            else:
                vr1, vr2, dr1, dr2 = f10[er], f20[er], d10[er], d20[er]
            if kind == KIND_COUPLED:
                q = row_next[r]
                eq = slot_edge[q]
                if slot_end[q]:
                    vq1, vq2, dq1, dq2 = f1l[eq], f2l[eq], d1l[eq], d2l[eq]
                else:
                    vq1, vq2, dq1, dq2 = f10[eq], f20[eq], d10[eq], d20[eq]
                mat[r, 2 * eq] += vq1
                mat[r, 2 * eq + 1] += vq2
                mat[r, 2 * er] -= vr1
                mat[r, 2 * er + 1] -= vr2
                mat[r, 2 * er] += 1j * dr1
                mat[r, 2 * er + 1] += 1j * dr2
                mat[r, 2 * eq] += 1j * dq1
                mat[r, 2 * eq + 1] += 1j * dq2
            elif kind == KIND_NEUMANN:
                mat[r, 2 * er] += 1j * dr1
                mat[r, 2 * er + 1] += 1j * dr2
            else:
                mat[r, 2 * er] += vr1
                mat[r, 2 * er + 1] += vr2
        if lam < 0.0:  # negative branch only; see scan_sigma_numpy
            for c in range(m):
                cm = 0.0
                for r in range(m):
                    v = abs(mat[r, c])
                    if v > cm:
                        cm = v
                if cm > 0.0:
                    for r in range(m):
                        mat[r, c] /= cm
        sv = np.linalg.svd(mat)[1]
        smin[i] = sv[m - 1]
        smax[i] = sv[0]
    return smin, smax


def scan_sigma_jit(lams, row_kind, row_next, slot_edge, slot_end, lengths):
    """numba-compiled scan (falls through to plain python when jit is off)."""
    lams = np.ascontiguousarray(lams, dtype=np.float64)
    return _scan_sigma_compiled(lams, row_kind, row_next, slot_edge, slot_end, lengths)


if HAS_NUMBA:
    scan_sigma = scan_sigma_jit
else:
    scan_sigma = scan_sigma_numpy
