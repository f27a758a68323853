"""Vertex condition matrices.

A vertex of degree d with the coupled condition imposes, cyclically in its
endpoint order, (F_{j+1} - F_j) + i(F'_j + F'_{j+1}) = 0, with derivatives
taken into the edges. In matrix form that is A F + i B F' = 0 where A is the
cyclic difference matrix and B the cyclic sum matrix. Degree-1 vertices carry
Neumann (A=0, B=1) or Dirichlet (A=1, B=0) data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .graph import BoundaryType, MetricGraph


def build_vertex_pair(bc: BoundaryType, degree: int):
    """(A, B) for one vertex; both are degree x degree real arrays."""
    if degree < 1:
        raise DimensionMismatch("vertex degree must be >= 1")
    bc = BoundaryType(bc)
    if degree == 1:
        if bc is BoundaryType.DIRICHLET:
            return np.array([[1.0]]), np.array([[0.0]])
        # coupled at degree 1 is Neumann
        return np.array([[0.0]]), np.array([[1.0]])
    if bc is not BoundaryType.COUPLED:
        raise DimensionMismatch(f"{bc.value} condition only defined at degree 1")
    eye = np.eye(degree)
    shift = np.roll(eye, 1, axis=1)  # ones on the superdiagonal and the corner
    # row j of A F reads F_{j+1} - F_j (cyclically), so A is shift minus eye
    return shift - eye, eye + shift


@dataclass(frozen=True)
class BlockSystem:
    """Block-diagonal (A, B) over all vertices, rows/cols in global slot order."""

    a: np.ndarray
    b: np.ndarray
    slot_index: dict


def assemble_blocks(g: MetricGraph) -> BlockSystem:
    """Stack the per-vertex pairs along the graph's global endpoint enumeration."""
    m = 2 * g.num_edges
    a = np.zeros((m, m))
    b = np.zeros((m, m))
    pos = 0
    for v in g.sorted_vertices:
        d = v.degree
        av, bv = build_vertex_pair(v.bc, d)
        a[pos:pos + d, pos:pos + d] = av
        b[pos:pos + d, pos:pos + d] = bv
        pos += d
    return BlockSystem(a, b, dict(g.slot_index))


def vertex_residual(a: np.ndarray, b: np.ndarray, traces, derivs) -> float:
    """Max-norm of A F + i B F' for given trace/derivative vectors."""
    f = np.asarray(traces, dtype=complex)
    fp = np.asarray(derivs, dtype=complex)
    if f.shape != (a.shape[0],) or fp.shape != (a.shape[0],):
        raise DimensionMismatch(
            f"expected vectors of length {a.shape[0]}, got {f.shape} and {fp.shape}")
    return float(np.max(np.abs(a @ f + 1j * (b @ fp))))
