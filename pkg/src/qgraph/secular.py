"""Secular matrices whose rank drops exactly at eigenvalues.

Two routes to the same zero set:

* edge ansatz: unknowns are two solution-basis coefficients per edge, rows are
  the vertex conditions. Entire in lambda, no poles, 2E x 2E.
* Dirichlet-to-Neumann: unknowns are the endpoint traces, rows impose
  A F + i B M(lambda) F = 0 with M the per-edge DtN map. Undefined at the edge
  Dirichlet eigenvalues (nominal poles), useful as an independent cross-check.

Star graphs additionally admit closed product and reduced transcendental
forms used for regression and fast sweeps.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq

from .coupling import assemble_blocks
from .errors import DtNSingular
from .graph import END, MetricGraph, START
from .kernels import build_matrix_grid_numpy, prepare_structure

_POLE_TOL = 1e-13


def interval_dtn(length: float, lam: float, edge_id: str = "interval") -> np.ndarray:
    """DtN map of one interval: traces (f(0), f(l)) to inward derivatives.

    Inward means +f'(0) at the start and -f'(l) at the end. Defined for every
    lambda off the interval's Dirichlet spectrum {(n pi / l)^2}.
    """
    l = float(length)
    if lam < 0.0:
        kap = np.sqrt(-lam)
        sh = np.sinh(kap * l)
        return np.array([[-kap * np.cosh(kap * l) / sh, kap / sh],
                         [kap / sh, -kap * np.cosh(kap * l) / sh]])
    if lam > 0.0:
        k = np.sqrt(lam)
        s = np.sin(k * l)
        if abs(s) < _POLE_TOL * max(1.0, k * l):
            raise DtNSingular(edge_id, int(round(k * l / np.pi)))
        return np.array([[-k * np.cos(k * l) / s, k / s],
                         [k / s, -k * np.cos(k * l) / s]])
    return np.array([[-1.0 / l, 1.0 / l], [1.0 / l, -1.0 / l]])


def build_secular_matrix(g: MetricGraph, lam: float, method: str = "edge", *,
                         entire_basis: bool = False) -> np.ndarray:
    """Secular matrix at one lambda; rank deficiency = eigenspace dimension.

    `entire_basis` pins the cosh/sinh pair on every edge (the convention the
    closed-form determinants use) instead of the numerically safer switched
    basis; it only matters for lambda < 0 with kappa * length >= 1 somewhere.
    """
    if method == "edge":
        struct = prepare_structure(g)
        return build_matrix_grid_numpy(np.array([lam]), *struct,
                                       entire=entire_basis)[0]
    if method == "dtn":
        blocks = assemble_blocks(g)
        m = 2 * g.num_edges
        dtn = np.zeros((m, m))
        for e in g.edges:
            i = g.slot_index[(e.id, START)]
            j = g.slot_index[(e.id, END)]
            blk = interval_dtn(e.length, lam, e.id)
            dtn[i, i] += blk[0, 0]
            dtn[i, j] += blk[0, 1]
            dtn[j, i] += blk[1, 0]
            dtn[j, j] += blk[1, 1]
        return blocks.a + 1j * (blocks.b @ dtn)
    raise ValueError(f"unknown method {method!r}")


def secular_determinant(g: MetricGraph, lam: float, method: str = "edge") -> complex:
    """Raw determinant of the secular matrix, for closed-form regressions.

    Root *detection* goes through singular values (see solve); the determinant
    is exposed because the star and figure-8 factorizations are stated in
    determinant form and make good regression targets.
    """
    return complex(np.linalg.det(
        build_secular_matrix(g, lam, method, entire_basis=True)))


# -- star closed forms ---------------------------------------------------------

def star_secular_closed_form(lengths, tips: str, kappa: float) -> complex:
    """Product form for a star at lambda = -kappa^2; zero iff eigenvalue.

    With per-edge factors A_j, B_j built from cosh/sinh (Neumann tips) or
    sinh/cosh (Dirichlet tips), the value is prod A_j + (-1)^(N+1) prod B_j.
    """
    lengths = np.asarray(lengths, dtype=float)
    n = lengths.size
    kl = kappa * lengths
    if tips == "neumann":
        a = np.cosh(kl) + 1j * kappa * np.sinh(kl)
        b = -np.cosh(kl) + 1j * kappa * np.sinh(kl)
    elif tips == "dirichlet":
        a = np.sinh(kl) + 1j * kappa * np.cosh(kl)
        b = -np.sinh(kl) + 1j * kappa * np.cosh(kl)
    else:
        raise ValueError(f"unknown tip condition {tips!r}")
    return complex(np.prod(a) + (-1) ** (n + 1) * np.prod(b))


def star_secular_reduced(lengths, tips: str, kappa: float) -> float:
    """Real reduced secular function for the star cases that admit one.

    Neumann tips: any 3-star (sum of coth products minus kappa^2), equilateral
    4-star (coth^2 - kappa^2), equilateral 6-star (quartic in coth). Dirichlet
    tips: any 3-star with coth replaced by tanh.
    """
    lengths = np.asarray(lengths, dtype=float)
    n = lengths.size
    equilateral = np.allclose(lengths, lengths[0], rtol=0, atol=0)
    if tips == "neumann":
        if n == 3:
            c = 1.0 / np.tanh(kappa * lengths)
            return float(c[0] * c[1] + c[0] * c[2] + c[1] * c[2] - kappa ** 2)
        if n == 4 and equilateral:
            c = 1.0 / np.tanh(kappa * lengths[0])
            return float(c ** 2 - kappa ** 2)
        if n == 6 and equilateral:
            c2 = (1.0 / np.tanh(kappa * lengths[0])) ** 2
            return float(3.0 * c2 ** 2 - 10.0 * c2 * kappa ** 2 + 3.0 * kappa ** 4)
    elif tips == "dirichlet":
        if n == 3:
            t = np.tanh(kappa * lengths)
            return float(t[0] * t[1] + t[0] * t[2] + t[1] * t[2] - kappa ** 2)
    else:
        raise ValueError(f"unknown tip condition {tips!r}")
    raise ValueError(f"no reduced form for N={n}, tips={tips}, "
                     f"equilateral={equilateral}")


def star_reduced_positive_dirichlet(k: float, length: float) -> float:
    """Equilateral Dirichlet 3-star, positive part: 3 tan^2(k l) - k^2."""
    return float(3.0 * np.tan(k * length) ** 2 - k ** 2)


def reduced_negative_kappas(lengths, tips: str = "neumann",
                            kappa_max: float = None) -> list:
    """All kappa > 0 roots of the reduced secular function, by bracketed brentq.

    Independent of the general solver: pure scalar root finding on the
    transcendental reduced forms.
    """
    lengths = np.asarray(lengths, dtype=float)
    if kappa_max is None:
        # coth(kappa l) <= coth of the smallest edge bounds the root region
        kappa_max = 3.0 * lengths.size / np.sqrt(np.min(lengths)) + 5.0
    grid = np.linspace(1e-6, kappa_max, 20000)
    fn = lambda k: star_secular_reduced(lengths, tips, k)
    vals = np.array([fn(k) for k in grid])
    roots = []
    sign = np.sign(vals)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        roots.append(float(brentq(fn, grid[i], grid[i + 1],
                                  xtol=1e-13, rtol=8.9e-16)))
    return roots
