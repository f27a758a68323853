"""Spectrum search: grid scan of sigma_min, golden-section refinement,
rank-based multiplicities, eigenfunction recovery.

Conventions: windows are closed intervals in lambda. Negative parts are
scanned uniformly in kappa = sqrt(-lambda) (default step 1e-3), positive
parts uniformly in lambda (default step min(0.01, (pi/L)^2/50)). lambda = 0
is always tested explicitly from the {1, x} solution basis. A located
minimum counts as an eigenvalue when sigma_min < rank_tol * sigma_max after
refinement to |d lambda| < refine_tol. Eigenvalues closer to zero than
zero_radius are indistinguishable from 0 and folded into it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DtNSingular, NotAnEigenvalue, WindowTooCoarse
from .graph import END, BoundaryType, MetricGraph, START
from .kernels import prepare_structure, scan_sigma
from .secular import build_secular_matrix

ZERO_RADIUS = 1e-7
_KAPPA_FLOOR = 1e-4
_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class EigRecord:
    """One located eigenvalue with its certification data."""

    lam: float
    mult: int
    sigma_min: float
    sigma_max: float


@dataclass
class Spectrum:
    """Eigenvalues found in a window, with multiplicities and diagnostics."""

    records: list
    window: tuple
    method: str
    tolerances: dict
    diagnostics: list = field(default_factory=list)

    def lambdas(self, with_multiplicity: bool = True) -> list:
        if with_multiplicity:
            return [r.lam for r in self.records for _ in range(r.mult)]
        return [r.lam for r in self.records]

    def nth(self, k: int) -> float:
        """k-th eigenvalue, 1-based, counting multiplicity."""
        lams = self.lambdas()
        if not 1 <= k <= len(lams):
            raise IndexError(f"only {len(lams)} eigenvalues in window, asked for {k}")
        return lams[k - 1]

    @property
    def count(self) -> int:
        return sum(r.mult for r in self.records)

    def count_negative(self) -> int:
        return sum(r.mult for r in self.records if r.lam < 0.0)

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": [{"lambda": r.lam, "mult": r.mult} for r in self.records],
            "method": self.method,
            "tolerances": self.tolerances,
            "window": list(self.window),
            "diagnostics": list(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def default_positive_step(g: MetricGraph) -> float:
    return min(0.01, (math.pi / g.total_length) ** 2 / 50.0)


def default_negative_floor(g: MetricGraph) -> float:
    """Heuristic lower end of the negative window: -(2 * max degree)^2.

    The coupling strength grows with vertex degree; empirically all negative
    eigenvalues of coupled/Neumann graphs sit well above this. Overridable
    everywhere it is used.
    """
    dmax = max(v.degree for v in g.vertices)
    return -float((2 * dmax) ** 2)


def _equilibrate_columns(mat):
    """Scale columns to unit max-abs; returns (scaled matrix, scale factors).

    Right diagonal scaling keeps the nullspace structure (x solves M x = 0 iff
    x / scales solves the scaled system) while removing the e^(kappa * l)
    dynamic range the hyperbolic basis develops at deep lambda, which would
    otherwise push sigma_min / sigma_max below the rank threshold at
    perfectly regular points.
    """
    colmax = np.abs(mat).max(axis=0)
    colmax = np.where(colmax > 0.0, colmax, 1.0)
    return mat / colmax, colmax


def _svdvals(mat, lam):
    """Singular values; columns are equilibrated on the negative branch only
    (positive-branch collapses of the whole matrix must stay visible)."""
    if lam < 0.0:
        mat = _equilibrate_columns(mat)[0]
    return np.linalg.svd(mat, compute_uv=False)


def _sigma_grid(g, struct, lams, method):
    if method == "edge":
        return scan_sigma(np.asarray(lams, dtype=float), *struct)
    smin = np.empty(len(lams))
    smax = np.empty(len(lams))
    for i, lam in enumerate(lams):
        try:
            s = _svdvals(build_secular_matrix(g, lam, method), lam)
        except Exception:
            smin[i] = np.inf
            smax[i] = np.inf
            continue
        smin[i], smax[i] = s[-1], s[0]
    return smin, smax


def _sigma_at(g, struct, lam, method):
    if method == "edge":
        smin, smax = scan_sigma(np.array([lam], dtype=float), *struct)
        return smin[0], smax[0]
    try:
        s = _svdvals(build_secular_matrix(g, lam, method), lam)
    except DtNSingular:
        return np.inf, np.inf
    return s[-1], s[0]


def _golden_min(fn, a, b, tol):
    """Golden-section argmin of a unimodal-enough scalar function on [a, b]."""
    x1 = b - _GOLD * (b - a)
    x2 = a + _GOLD * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLD * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLD * (b - a)
            f2 = fn(x2)
    return (a + b) / 2.0


def _bracket_minima(xs, ys):
    """Indices of local minima of ys, including the boundary points."""
    n = len(xs)
    out = []
    for i in range(n):
        left = ys[i - 1] if i > 0 else np.inf
        right = ys[i + 1] if i < n - 1 else np.inf
        if np.isfinite(ys[i]) and ys[i] <= left and ys[i] <= right:
            out.append(i)
    return out


def find_spectrum(g: MetricGraph, window, method: str = "edge", *,
                  pos_step: Optional[float] = None, kappa_step: float = 1e-3,
                  rank_tol: float = 1e-8, refine_tol: float = 1e-12,
                  mult_guard: float = 10.0) -> Spectrum:
    """All eigenvalues in the closed window [lo, hi], with multiplicities."""
    lo, hi = float(window[0]), float(window[1])
    if not lo <= hi:
        raise ValueError(f"window {window} is empty")
    if method not in ("edge", "dtn"):
        raise ValueError(f"unknown method {method!r}")
    struct = prepare_structure(g)
    step_pos = pos_step if pos_step is not None else default_positive_step(g)

    candidates = []  # (lambda, grid step in lambda near it)
    scale_ref = 0.0  # typical sigma_max over the scanned grids

    # negative part, scanned in kappa
    if lo < -ZERO_RADIUS:
        k_lo = math.sqrt(-min(hi, 0.0)) if hi < 0 else _KAPPA_FLOOR
        k_hi = math.sqrt(-lo)
        if k_hi > k_lo:
            n = max(3, int(math.ceil((k_hi - k_lo) / kappa_step)) + 1)
            kgrid = np.linspace(k_lo, k_hi, n)
            smin, smax = _sigma_grid(g, struct, -kgrid ** 2, method)
            scale_ref = max(scale_ref, float(np.median(smax[np.isfinite(smax)])))
            for i in _bracket_minima(kgrid, smin):
                a = kgrid[max(i - 1, 0)]
                b = kgrid[min(i + 1, n - 1)]
                tol_k = max(refine_tol / (2.0 * max(kgrid[i], 0.05)), 1e-15)
                ks = _golden_min(
                    lambda k: _sigma_at(g, struct, -k * k, method)[0], a, b, tol_k)
                lam_step = 2.0 * kgrid[i] * (kgrid[1] - kgrid[0])
                candidates.append((-ks * ks, lam_step))

    # positive part, scanned in lambda
    if hi > ZERO_RADIUS:
        p_lo = max(lo, ZERO_RADIUS)
        n = max(3, int(math.ceil((hi - p_lo) / step_pos)) + 1)
        pgrid = np.linspace(p_lo, hi, n)
        smin, smax = _sigma_grid(g, struct, pgrid, method)
        scale_ref = max(scale_ref, float(np.median(smax[np.isfinite(smax)])))
        for i in _bracket_minima(pgrid, smin):
            a = pgrid[max(i - 1, 0)]
            b = pgrid[min(i + 1, n - 1)]
            ls = _golden_min(
                lambda lam: _sigma_at(g, struct, lam, method)[0], a, b, refine_tol)
            candidates.append((ls, pgrid[1] - pgrid[0]))

    # certify candidates; a collapse of sigma_max against the grid-typical
    # scale means the whole matrix vanished (eigenvalue of full multiplicity
    # 2E, e.g. a one-edge cycle), which the relative rank test cannot see
    accepted = []
    diagnostics = []
    for lam, grid_step in sorted(candidates):
        if abs(lam) <= ZERO_RADIUS:
            continue  # resolved by the explicit zero test below
        if not (lo - refine_tol <= lam <= hi + refine_tol):
            continue
        sm, sx = _sigma_at(g, struct, lam, method)
        if method == "dtn" and (not np.isfinite(sx)
                                or sx > 1e6 * max(scale_ref, 1.0)):
            # interval-Dirichlet pole of the DtN map: entries blow up like
            # 1/dist, the rank ratio under-reads, and any eigenvalue hiding
            # here cannot be certified on this route (the edge method can)
            diagnostics.append(f"DtNPole(lambda={lam:.12g})")
            continue
        if sm < rank_tol * sx or sx < rank_tol * scale_ref:
            accepted.append((lam, grid_step))

    merged = []
    for lam, grid_step in accepted:
        near = max(1e-9, 1e3 * refine_tol) * max(1.0, abs(lam))
        if merged and abs(lam - merged[-1][0]) <= near:
            continue
        merged.append((lam, grid_step))
    for (l1, s1), (l2, s2) in zip(merged, merged[1:]):
        if abs(l2 - l1) < max(s1, s2):
            raise WindowTooCoarse(
                f"roots {l1:.12g} and {l2:.12g} closer than the scan step; "
                f"rescan with a finer grid")

    records = []

    def full_svd_record(lam):
        s = _svdvals(build_secular_matrix(g, lam, method), lam)
        if s[0] < rank_tol * scale_ref:  # full collapse: every column is null
            return EigRecord(float(lam), len(s), float(s[-1]), float(s[0])), len(s)
        mult = int(np.sum(s < rank_tol * s[0]))
        shaky = np.sum((s >= rank_tol * s[0] / mult_guard)
                       & (s <= rank_tol * s[0] * mult_guard))
        if shaky:
            diagnostics.append(f"MultiplicityUncertain(lambda={lam:.12g})")
        return EigRecord(float(lam), mult, float(s[-1]), float(s[0])), mult

    if lo <= 0.0 <= hi:
        rec, mult = full_svd_record(0.0)
        if mult > 0:
            records.append(rec)

    for lam, _ in merged:
        rec, mult = full_svd_record(lam)
        if mult > 0:
            records.append(rec)

    records.sort(key=lambda r: r.lam)
    return Spectrum(
        records=records,
        window=(lo, hi),
        method=method,
        tolerances={"rank_tol": rank_tol, "refine_tol": refine_tol,
                    "kappa_step": kappa_step, "pos_step": step_pos,
                    "zero_radius": ZERO_RADIUS},
        diagnostics=diagnostics,
    )


def count_negative(g: MetricGraph, *, floor: Optional[float] = None,
                   method: str = "edge") -> int:
    """Number of negative eigenvalues (with multiplicity).

    The default search floor is the -(2 max degree)^2 heuristic; pass `floor`
    to widen it. A diagnostic-worthy root hugging the floor would indicate the
    heuristic failed, so that case raises via the assert below.
    """
    lo = floor if floor is not None else default_negative_floor(g)
    spec = find_spectrum(g, (lo, -1e-8), method=method)
    if spec.records and spec.records[0].lam < 0.98 * lo:
        raise WindowTooCoarse(f"eigenvalue {spec.records[0].lam} hugs the search "
                              f"floor {lo}; widen it")
    return spec.count_negative()


def first_eigenvalues(g: MetricGraph, k: int, method: str = "edge", *,
                      floor: Optional[float] = None):
    """First k eigenvalues (with multiplicity), growing the window as needed."""
    lo = floor if floor is not None else default_negative_floor(g)
    hi = (math.pi * (k + 2) / g.total_length) ** 2
    for _ in range(12):
        spec = find_spectrum(g, (lo, hi), method=method)
        lams = spec.lambdas()
        if len(lams) >= k:
            return lams[:k], spec
        hi *= 2.0
    raise WindowTooCoarse(f"could not locate {k} eigenvalues below {hi}")


# -- eigenfunctions ------------------------------------------------------------

@dataclass
class Eigenfunction:
    """One eigenfunction as per-edge amplitudes over the regime basis.

    lambda < 0: a cosh(kappa x) + b sinh(kappa x);
    lambda > 0: a cos(k x) + b sin(k x); lambda = 0: a + b x.
    """

    graph: MetricGraph
    lam: float
    coeffs: dict  # edge_id -> (a, b)

    @property
    def _rate(self) -> float:
        return math.sqrt(abs(self.lam))

    def value(self, edge_id: str, x):
        a, b = self.coeffs[edge_id]
        x = np.asarray(x, dtype=float)
        w = self._rate
        if self.lam < 0.0:
            return a * np.cosh(w * x) + b * np.sinh(w * x)
        if self.lam > 0.0:
            return a * np.cos(w * x) + b * np.sin(w * x)
        return a + b * x

    def derivative(self, edge_id: str, x):
        a, b = self.coeffs[edge_id]
        x = np.asarray(x, dtype=float)
        w = self._rate
        if self.lam < 0.0:
            return w * (a * np.sinh(w * x) + b * np.cosh(w * x))
        if self.lam > 0.0:
            return w * (-a * np.sin(w * x) + b * np.cos(w * x))
        return b * np.ones_like(x)

    def trace_vectors(self):
        """(F, F') over global slots: traces and inward derivatives."""
        g = self.graph
        m = 2 * g.num_edges
        f = np.zeros(m, dtype=complex)
        fp = np.zeros(m, dtype=complex)
        for e in g.edges:
            i = g.slot_index[(e.id, START)]
            j = g.slot_index[(e.id, END)]
            f[i] = self.value(e.id, 0.0)
            f[j] = self.value(e.id, e.length)
            fp[i] = self.derivative(e.id, 0.0)
            fp[j] = -self.derivative(e.id, e.length)
        return f, fp

    def norm_sq(self, order: int = 64) -> float:
        from .quadform import edge_quadrature

        total = 0.0
        for e in self.graph.edges:
            x, w = edge_quadrature(e.length, order)
            total += float(np.sum(w * np.abs(self.value(e.id, x)) ** 2))
        return total

    def as_trial(self):
        from .quadform import TrialFunction

        return TrialFunction(
            values={e.id: (lambda x, eid=e.id: self.value(eid, x))
                    for e in self.graph.edges},
            derivatives={e.id: (lambda x, eid=e.id: self.derivative(eid, x))
                         for e in self.graph.edges},
        )


def eigenfunction_at(g: MetricGraph, lam: float, *,
                     rank_tol: float = 1e-8, order: int = 64) -> list:
    """L2-orthonormal basis of the eigenspace at lam.

    Extraction always goes through the edge-ansatz matrix (its nullspace IS
    the coefficient vector; the DtN nullspace only carries traces). Raises
    NotAnEigenvalue when the matrix has full rank there.
    """
    from .quadform import edge_quadrature

    s_mat = build_secular_matrix(g, lam, "edge")
    scales = np.ones(s_mat.shape[1])
    if lam < 0.0:
        s_mat, scales = _equilibrate_columns(s_mat)
    _, svals, vh = np.linalg.svd(s_mat)
    # collapse probe: when the whole matrix vanished (multiplicity 2E) the
    # svd of rounding noise is meaningless; compare against a nearby lambda
    probe = np.linalg.norm(build_secular_matrix(g, lam + 1e-3 * (1.0 + abs(lam)),
                                                "edge"))
    if svals[0] < rank_tol * probe:
        null = [np.eye(s_mat.shape[1], dtype=complex)[i]
                for i in range(s_mat.shape[1])]
    else:
        null = [vh[i].conj() / scales
                for i in range(len(svals)) if svals[i] < rank_tol * svals[0]]
    if not null:
        raise NotAnEigenvalue(f"sigma_min/sigma_max = {svals[-1] / svals[0]:.3e} "
                              f"at lambda = {lam}")
    w = math.sqrt(abs(lam))
    funcs = []
    for vec in null:
        coeffs = {}
        for e in g.edges:
            c1, c2 = vec[2 * g.edge_index[e.id]], vec[2 * g.edge_index[e.id] + 1]
            if lam == 0.0:
                coeffs[e.id] = (c1, c2)
            elif lam < 0.0 and w * e.length >= 1.0:
                # undo the decaying-pair switch (kernels): back to cosh/sinh
                es = math.exp(-w * e.length)
                coeffs[e.id] = (c1 + c2 * es, -c1 + c2 * es)
            else:
                coeffs[e.id] = (c1, c2 / w)
        funcs.append(Eigenfunction(g, float(lam), coeffs))

    # orthonormalize in L2 via the quadrature Gram matrix
    quad = {e.id: edge_quadrature(e.length, order) for e in g.edges}
    samples = []
    weights = np.concatenate([quad[e.id][1] for e in g.edges])
    for f in funcs:
        samples.append(np.concatenate([f.value(e.id, quad[e.id][0]) for e in g.edges]))
    samples = np.array(samples)
    gram = (samples * weights) @ samples.conj().T
    evals, evecs = np.linalg.eigh(gram)
    keep = evals > 1e-12 * evals[-1]
    trans = np.conj(evecs[:, keep]) / np.sqrt(evals[keep])
    out = []
    for col in range(trans.shape[1]):
        coeffs = {}
        for e in g.edges:
            a = sum(trans[j, col] * funcs[j].coeffs[e.id][0] for j in range(len(funcs)))
            b = sum(trans[j, col] * funcs[j].coeffs[e.id][1] for j in range(len(funcs)))
            coeffs[e.id] = (a, b)
        out.append(Eigenfunction(g, float(lam), coeffs))
    return out
