"""P1 Galerkin oracle for the vertex-coupled form.

Independent cross-check of the secular solver: discretize each edge with
linear elements, add the imaginary skew trace pairing at coupled vertices,
eliminate the linear constraints (alternating trace sums at even-degree
coupled vertices, Dirichlet tips) by nullspace restriction, then solve the
reduced Hermitian pencil with shift-invert Lanczos. Shares only the
MetricGraph data model with the secular path; independence is the point.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from .errors import MeshTooCoarse
from .graph import END, BoundaryType, MetricGraph, START
from .solve import default_negative_floor


def _trace_dofs(g: MetricGraph, h: float):
    """Per-edge node offsets and the global dof of each endpoint trace."""
    offsets, nelem, total = {}, {}, 0
    for e in g.edges:
        n = max(1, int(round(e.length / h)))
        offsets[e.id] = total
        nelem[e.id] = n
        total += n + 1
    trace = {}
    for e in g.edges:
        trace[(e.id, START)] = offsets[e.id]
        trace[(e.id, END)] = offsets[e.id] + nelem[e.id]
    return offsets, nelem, total, trace


def discretize(g: MetricGraph, h: float):
    """Assemble the discrete pencil: (H, M, C).

    H is the Hermitian form matrix (edge stiffness plus skew vertex traces),
    M the mass matrix, C the restriction onto the constraint nullspace
    (columns span the admissible subspace: alternating trace sums vanish at
    even-degree coupled vertices, Dirichlet tip traces vanish). The reduced
    pencil is (C* H C, C^T M C).
    """
    if not h > 0:
        raise MeshTooCoarse("mesh size must be positive")
    offsets, nelem, total, trace = _trace_dofs(g, h)

    rows, cols, kvals, mvals = [], [], [], []
    for e in g.edges:
        n = nelem[e.id]
        he = e.length / n
        base = offsets[e.id]
        left = np.arange(n) + base
        right = left + 1
        for (i, j, kv, mv) in ((left, left, 1.0, 2.0), (right, right, 1.0, 2.0),
                               (left, right, -1.0, 1.0), (right, left, -1.0, 1.0)):
            rows.append(i)
            cols.append(j)
            kvals.append(np.full(n, kv / he))
            mvals.append(np.full(n, mv * he / 6.0))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    stiff = sp.coo_matrix((np.concatenate(kvals), (rows, cols)),
                          shape=(total, total)).tocsr()
    mass = sp.coo_matrix((np.concatenate(mvals), (rows, cols)),
                         shape=(total, total)).tocsr()

    hr, hc, hv = [], [], []
    for v in g.vertices:
        if v.bc is not BoundaryType.COUPLED or v.degree < 2:
            continue
        dofs = [trace[ref] for ref in v.order]
        for j in range(len(dofs)):
            for k in range(len(dofs)):
                if j == k:
                    continue
                sign = -1.0 if (j + k) % 2 else 1.0
                eps = 1.0 if j > k else -1.0
                hr.append(dofs[j])
                hc.append(dofs[k])
                hv.append(1j * sign * eps)
    coupling = sp.coo_matrix((hv, (hr, hc)), shape=(total, total)).tocsr() \
        if hv else sp.csr_matrix((total, total), dtype=complex)
    h_mat = (stiff.astype(complex) + coupling).tocsr()

    # constraint elimination by substitution: eliminated dof = combo of kept
    elim = {}
    for v in g.vertices:
        if v.bc is BoundaryType.DIRICHLET:
            elim[trace[v.order[0]]] = []
        elif v.bc is BoundaryType.COUPLED and v.degree % 2 == 0:
            dofs = [trace[ref] for ref in v.order]
            # sum_j (-1)^j F_j = 0 (1-based)  =>  F_d = -sum_{j<d} (-1)^j F_j
            coef = [-((-1.0) ** j) for j in range(1, v.degree)]
            elim[dofs[-1]] = list(zip(dofs[:-1], coef))
    free = [i for i in range(total) if i not in elim]
    col_of = {dof: c for c, dof in enumerate(free)}
    rr = list(free)
    rc = list(range(len(free)))
    rv = [1.0] * len(free)
    for dof, terms in elim.items():
        for src, coef in terms:
            rr.append(dof)
            rc.append(col_of[src])
            rv.append(coef)
    restrict = sp.coo_matrix((rv, (rr, rc)), shape=(total, len(free))).tocsr()
    return h_mat, mass, restrict


def oracle_eigenvalues(g: MetricGraph, count: int, h: float, *,
                       sigma: float = None) -> np.ndarray:
    """`count` smallest eigenvalues of the constrained pencil, ascending.

    Raises MeshTooCoarse when the reduced problem is too small to trust
    that many Ritz values.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    h_mat, mass, restrict = discretize(g, h)
    ndof = restrict.shape[1]
    if count > ndof // 4:
        raise MeshTooCoarse(
            f"{count} eigenvalues from {ndof} reduced dofs is unreliable; "
            f"refine the mesh")
    a_red = (restrict.conj().T @ h_mat @ restrict).tocsc()
    m_red = (restrict.T @ mass @ restrict).tocsc()
    if sigma is None:
        sigma = default_negative_floor(g) - 1.0
    vals = eigsh(a_red, k=count, M=m_red, sigma=sigma,
                 which="LM", return_eigenvectors=False)
    return np.sort(vals.real)
