"""Quadratic form: domain checks, symmetry, Rayleigh identities, trial surgery."""

import math

import numpy as np
import pytest

from qgraph.errors import NotInDomain, QGraphError
from qgraph.graph import make_figure8, make_star
from qgraph.quadform import (
    TrialFunction,
    build_transplant_trial,
    check_domain,
    edge_quadrature,
    form_value,
    grad_norm_sq,
    rayleigh_quotient,
    trial_norm_sq,
    trial_traces,
)
from qgraph.solve import eigenfunction_at, find_spectrum

STAR3_LAM1 = -3.3290586132660844


def poly_trial(g, rng):
    """Random quadratic per edge; smooth, hence in the form domain for odd stars."""
    vals, ders = {}, {}
    for e in g.edges:
        c = rng.normal(size=3)
        p = np.polynomial.Polynomial(c)
        vals[e.id] = p
        ders[e.id] = p.deriv()
    return TrialFunction(values=vals, derivatives=ders)


class TestQuadrature:
    def test_polynomial_exactness(self):
        x, w = edge_quadrature(2.0, order=8)
        assert np.sum(w * x**3) == pytest.approx(4.0, rel=1e-13)

    def test_breakpoint_splitting(self):
        # |x - 1/2| has a kink; split quadrature integrates it exactly
        x, w = edge_quadrature(1.0, order=16, breaks=(0.5,))
        assert np.sum(w * np.abs(x - 0.5)) == pytest.approx(0.25, rel=1e-13)

    def test_break_outside_interval_ignored(self):
        x1, w1 = edge_quadrature(1.0, order=8)
        x2, w2 = edge_quadrature(1.0, order=8, breaks=(1.5, -0.1))
        assert np.array_equal(x1, x2) and np.array_equal(w1, w2)


class TestDomain:
    def test_dirichlet_trace_rejected(self):
        g = make_star([1.0] * 3, tip_bc="dirichlet")
        ones = TrialFunction(
            values={e.id: (lambda x: np.ones_like(np.asarray(x, dtype=float)))
                    for e in g.edges},
            derivatives={e.id: (lambda x: np.zeros_like(np.asarray(x, dtype=float)))
                         for e in g.edges},
        )
        with pytest.raises(NotInDomain):
            check_domain(g, ones)

    def test_even_vertex_alternating_sum_rejected(self, fig8):
        # degree 4 vertex: sum of signed traces must vanish; x on one loop
        # breaks it
        f = TrialFunction(
            values={"e1": (lambda x: np.asarray(x, dtype=float)),
                    "e2": (lambda x: np.zeros_like(np.asarray(x, dtype=float)))},
            derivatives={"e1": (lambda x: np.ones_like(np.asarray(x, dtype=float))),
                         "e2": (lambda x: np.zeros_like(np.asarray(x, dtype=float)))},
        )
        with pytest.raises(NotInDomain):
            check_domain(g=fig8, f=f)

    def test_smooth_trial_accepted(self, star3, rng):
        check_domain(star3, poly_trial(star3, rng))

    def test_form_value_runs_domain_check(self, fig8):
        bad = TrialFunction(
            values={"e1": (lambda x: np.asarray(x, dtype=float)),
                    "e2": (lambda x: np.zeros_like(np.asarray(x, dtype=float)))},
            derivatives={"e1": (lambda x: np.ones_like(np.asarray(x, dtype=float))),
                         "e2": (lambda x: np.zeros_like(np.asarray(x, dtype=float)))},
        )
        with pytest.raises(NotInDomain):
            form_value(fig8, bad)
        # and the escape hatch skips it
        form_value(fig8, bad, skip_domain_check=True)


class TestFormValue:
    def test_diagonal_is_real_float(self, star3, rng):
        v = form_value(star3, poly_trial(star3, rng))
        assert isinstance(v, float)

    def test_hermitian_symmetry(self, star3, rng):
        f, h = poly_trial(star3, rng), poly_trial(star3, rng)
        assert form_value(star3, f, h) == pytest.approx(
            np.conj(form_value(star3, h, f)), abs=1e-12)

    def test_diagonal_matches_offdiagonal(self, star3, rng):
        f = poly_trial(star3, rng)
        assert form_value(star3, f) == pytest.approx(
            complex(form_value(star3, f, f)).real, rel=1e-12)

    def test_vertex_term_lowers_energy_below_gradient(self, star3):
        # the signed trace coupling is what pushes a[psi] below the gradient
        # integral; on the ground state it must, the eigenvalue is negative
        psi = eigenfunction_at(star3, STAR3_LAM1)[0]
        trial = psi.as_trial()
        assert form_value(star3, trial) < 0.0 < grad_norm_sq(star3, trial)


class TestRayleigh:
    def test_matches_negative_eigenvalue(self, star3):
        psi = eigenfunction_at(star3, STAR3_LAM1)[0]
        rq = rayleigh_quotient(star3, psi.as_trial())
        assert rq == pytest.approx(STAR3_LAM1, rel=1e-6)

    def test_matches_positive_eigenvalue(self, star3):
        lam = 1.067126678486186
        psi = eigenfunction_at(star3, lam)[0]
        assert rayleigh_quotient(star3, psi.as_trial()) == pytest.approx(lam, rel=1e-6)

    def test_matches_on_figure8(self, fig8):
        psi = eigenfunction_at(fig8, -1.0)[0]
        assert rayleigh_quotient(fig8, psi.as_trial()) == pytest.approx(-1.0, rel=1e-6)

    def test_variational_lower_bound(self, star3, rng):
        for _ in range(10):
            rq = rayleigh_quotient(star3, poly_trial(star3, rng))
            assert rq >= STAR3_LAM1 - 1e-9

    def test_zero_norm_raises(self, star3):
        zero = TrialFunction(
            values={e.id: (lambda x: np.zeros_like(np.asarray(x, dtype=float)))
                    for e in star3.edges},
            derivatives={e.id: (lambda x: np.zeros_like(np.asarray(x, dtype=float)))
                         for e in star3.edges},
        )
        with pytest.raises(QGraphError):
            rayleigh_quotient(star3, zero)

    def test_norms_on_eigenfunction(self, star3):
        psi = eigenfunction_at(star3, STAR3_LAM1)[0]
        trial = psi.as_trial()
        assert trial_norm_sq(star3, trial) == pytest.approx(1.0, rel=1e-9)
        assert grad_norm_sq(star3, trial) > 0.0


class TestTraces:
    def test_layout(self, star3):
        f = TrialFunction(
            values={e.id: (lambda x, c=i: c + np.asarray(x, dtype=float))
                    for i, e in enumerate(star3.edges)},
            derivatives={e.id: (lambda x: np.ones_like(np.asarray(x, dtype=float)))
                         for e in star3.edges},
        )
        tr = trial_traces(star3, f)
        assert tr[star3.slot_index[("e2", "start")]] == pytest.approx(1.0)
        assert tr[star3.slot_index[("e2", "end")]] == pytest.approx(2.0)


class TestTransplantTrial:
    def test_continuity_and_energy_drop(self):
        g = make_star([1.0, 0.7, 1.3])
        lam1 = -3.461724246805116
        psi = eigenfunction_at(g, lam1)[0]
        new_g, trial = build_transplant_trial(g, psi, "e2", "e3", 0.2)
        assert new_g.edge_map["e2"].length == pytest.approx(0.5)
        assert new_g.edge_map["e3"].length == pytest.approx(1.5)
        # continuous across the seam at the old far end of e3
        below = complex(trial.value("e3", 1.3 - 1e-9))
        above = complex(trial.value("e3", 1.3 + 1e-9))
        assert abs(above - below) < 1e-6
        check_domain(new_g, trial)
        # the glued trial certifies strict decrease of the ground state
        assert rayleigh_quotient(new_g, trial, order=128) < lam1 - 1e-6

    def test_rejects_wrong_direction(self):
        g = make_star([1.0, 0.7, 1.3])
        psi = eigenfunction_at(g, -3.461724246805116)[0]
        with pytest.raises(QGraphError):
            build_transplant_trial(g, psi, "e3", "e2", 0.2)

    def test_rejects_bad_amount(self, star3):
        psi = eigenfunction_at(star3, STAR3_LAM1)[0]
        for amount in (0.0, -0.1, 1.5):
            with pytest.raises(QGraphError):
                build_transplant_trial(star3, psi, "e1", "e2", amount)
