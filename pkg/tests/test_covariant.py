import math
import warnings

import numpy as np
import pytest
from helpers import gaussian_signal, hardy_pole_signal, rel_l2

import affharm as ah
from affharm import (
    GroupElement,
    RealGrid,
    Signal,
    average_transform,
    builtin,
    cauchy_integral,
    covariant,
    covariant_definitional,
    default_scale_axis,
    family_sup_transform,
    lp_norm,
    poisson_integral,
    wavelet_transform,
)
from affharm.covariant import wavelet_transform_inner
from affharm.fiducial import from_kernel_signal


class TestCovariantBasics:
    def test_default_axis(self):
        a = default_scale_axis()
        assert len(a) == 64
        assert a[0] == pytest.approx(2.0 ** -6)
        assert a[-1] == pytest.approx(2.0 ** 6)

    def test_box_average_full_overlap(self):
        grid = RealGrid(-4.0, 0.001, 8001)
        x = grid.points()
        f = Signal(grid, (np.abs(x) <= 1).astype(complex))
        u = covariant(builtin("box_average"), math.inf, f, np.array([0.5, 1.0, 2.0]), grid)
        i0 = np.argmin(np.abs(x))
        assert u.values[1, i0] == pytest.approx(1.0, abs=2e-3)

    def test_poisson_unit_mass_all_scales(self):
        # P has unit integral: the p = inf field of a wide box is 1 inside
        grid = RealGrid(-600.0, 0.05, 24001)
        x = grid.points()
        f = Signal(grid, np.ones(grid.n, dtype=complex))
        a_axis = np.array([0.5, 2.0, 8.0])
        u = covariant(builtin("poisson"), math.inf, f, a_axis, grid)
        inner = np.abs(x) <= 50
        assert np.max(np.abs(u.values[:, inner] - 1.0)) <= 1e-3
        # at p = 1 the same field scales like a
        u1 = covariant(builtin("poisson"), 1.0, f, a_axis, grid)
        for l, a in enumerate(a_axis):
            assert np.max(np.abs(u1.values[l, inner] - a)) <= 1e-3 * a

    def test_matches_cauchy_integral_scaling(self):
        # W_{F+} at p relates to the Cauchy integral by -2 a**(1/p), exactly
        # at the quadrature level (same sums after change of variables)
        grid = RealGrid(-200.0, 0.01, 40001)
        f = hardy_pole_signal(grid)
        a_axis = np.array([0.5, 1.0, 2.0])
        W = covariant(builtin("cauchy_plus"), 2.0, f, a_axis, grid)
        C = cauchy_integral(f, a_axis, grid)
        want = -2.0 * np.sqrt(a_axis)[:, None] * C.values
        assert rel_l2(W.values, want) <= 1e-8

    def test_value_at_2_0_against_closed_form(self):
        # -2 sqrt(2) [Cf](2i) = -2 sqrt(2) / (3i); wide grid bounds the
        # truncation tail of the slowly decaying integrand by ~1/(pi X)
        X, dx = 5e4, 0.05
        grid = RealGrid(-X, dx, int(2 * X / dx) + 1)
        f = hardy_pole_signal(grid)
        W = covariant(builtin("cauchy_plus"), 2.0, f, np.array([1.0, 2.0]), grid)
        i0 = np.argmin(np.abs(grid.points()))
        want = -2 * math.sqrt(2) / (3j)
        assert abs(W.values[1, i0] - want) <= 1e-5

    def test_definitional_form_agrees_on_lattice_points(self):
        # where (a, b) maps kernel nodes onto signal nodes the change of
        # variables is exact and both forms give the same quadrature
        grid = RealGrid(-16.0, 1 / 128, 4097)
        f = gaussian_signal(grid, width=2.0)
        kgrid = RealGrid(-16.0, 1 / 128, 4097)
        kern = Signal(kgrid, ((1 - kgrid.points() ** 2) * np.exp(-kgrid.points() ** 2 / 2)).astype(complex))
        fid = from_kernel_signal(kern, "mexican-sampled")
        a_axis = np.array([1.0, 2.0])
        u = covariant(fid, 2.0, f, a_axis, grid)
        x = grid.points()
        for a, l in ((1.0, 0), (2.0, 1)):
            for b in (0.0, 0.5, -2.0):
                j = np.argmin(np.abs(x - b))
                direct = u.values[l, j]
                literal = covariant_definitional(fid, 2.0, f, GroupElement(a, b))
                # the rescaled quadrature weights differ by the jacobian a
                assert abs(direct - a * literal) <= 1e-8 * max(abs(direct), 1.0)

    def test_truncation_flag(self):
        grid = RealGrid(-5.0, 0.01, 1001)
        f = gaussian_signal(grid)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            u = covariant(builtin("mexican_hat"), 2.0, f, np.array([4.0, 8.0]), grid)
        assert u.meta and u.meta.get("truncated") is True
        assert any("zero extension" in str(w.message) for w in caught)


class TestCauchyIntegral:
    def test_hardy_pole_closed_form(self):
        X, dx = 5e4, 0.05
        grid = RealGrid(-X, dx, int(2 * X / dx) + 1)
        f = hardy_pole_signal(grid)
        a_axis = np.array([0.5, 1.0, 2.0])
        C = cauchy_integral(f, a_axis, grid)
        x = grid.points()
        inner = np.abs(x) <= 20
        for l, a in enumerate(a_axis):
            want = 1.0 / (x[inner] + 1j * (a + 1))
            assert np.max(np.abs(C.values[l, inner] - want)) <= 1e-5

    def test_anti_hardy_pole_annihilated(self):
        X, dx = 5e4, 0.05
        grid = RealGrid(-X, dx, int(2 * X / dx) + 1)
        f = hardy_pole_signal(grid, sign=-1)
        C = cauchy_integral(f, np.array([0.5, 1.0]), grid)
        inner = np.abs(grid.points()) <= 20
        assert np.max(np.abs(C.values[:, inner])) <= 1e-5

    def test_poisson_kernel_value(self):
        # [C p](i) = 1/(4 pi), frozen from residue calculus and checked by
        # a 10x-resolution quadrature oracle
        grid = RealGrid(-400.0, 0.02, 40001)
        x = grid.points()
        f = Signal(grid, (1 / (np.pi * (1 + x * x))).astype(complex))
        C = cauchy_integral(f, np.array([0.5, 1.0]), grid)
        i0 = np.argmin(np.abs(x))
        got = C.values[1, i0]

        og = RealGrid(-400.0, 0.002, 400001)
        xo = og.points()
        w = ah.signal.trapezoid_weights(og.n, og.dx)
        oracle = np.sum(w * (1 / (np.pi * (1 + xo * xo))) / (xo - 1j)) / (2j * np.pi)
        assert abs(oracle - 1 / (4 * np.pi)) <= 1e-5
        assert abs(got - oracle) <= 1e-6


class TestPoissonIntegral:
    def test_constant_one(self):
        grid = RealGrid(-600.0, 0.05, 24001)
        f = Signal(grid, np.ones(grid.n, dtype=complex))
        P = poisson_integral(f, np.array([0.5, 1.0, 4.0]), grid)
        inner = np.abs(grid.points()) <= 50
        assert np.max(np.abs(P.values[:, inner] - 1.0)) <= 1e-3

    def test_semigroup(self):
        grid = RealGrid(-400.0, 0.02, 40001)
        x = grid.points()
        f = Signal(grid, (1 / (np.pi * (1 + x * x))).astype(complex))
        a_axis = np.array([0.5, 1.0, 2.0])
        P = poisson_integral(f, a_axis, grid)
        inner = np.abs(x) <= 50
        for l, a in enumerate(a_axis):
            want = (1 + a) / (np.pi * ((1 + a) ** 2 + x[inner] ** 2))
            assert rel_l2(P.values[l, inner], want) <= 1e-3

    def test_linearity(self):
        grid = RealGrid(-40.0, 0.02, 4001)
        f = ah.bandlimited_noise(grid, 0.2, 1.5, seed=6, envelope_width=8.0)
        g = gaussian_signal(grid, width=3.0)
        a_axis = np.array([0.5, 1.0])
        a, b = 2.0 - 1j, 0.3 + 0.7j
        combo = Signal(grid, a * f.values + b * g.values)
        lhs = poisson_integral(combo, a_axis, grid).values
        rhs = a * poisson_integral(f, a_axis, grid).values + b * poisson_integral(
            g, a_axis, grid
        ).values
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(rhs))


class TestAverageTransform:
    def test_box_full_window(self):
        grid = RealGrid(-4.0, 0.001, 8001)
        x = grid.points()
        f = Signal(grid, (np.abs(x) <= 1).astype(complex))
        u = average_transform(math.inf, f, np.array([1.0, 2.0]), grid)
        i0 = np.argmin(np.abs(x))
        assert u.values[0, i0].real == pytest.approx(1.0, abs=2e-3)
        assert u.values[1, i0].real == pytest.approx(0.5, abs=2e-3)

    def test_dyadic_identity(self):
        grid = RealGrid(-4.0, 1 / 256, 2049)
        f = ah.bandlimited_noise(grid, 0.3, 2.0, seed=8, real=False)
        a_axis = np.array([0.25, 0.5, 1.0])
        u = average_transform(1.0, f, a_axis, grid)
        x = grid.points()
        # field(a, b) = field(a/2, b + a/2) + field(a/2, b - a/2) on nodes
        a, ah_ = 1.0, 0.5
        l1, l0 = 2, 1
        shift = int(round((a / 2) / grid.dx))
        lhs = u.values[l1, shift:-shift]
        rhs = u.values[l0, 2 * shift :] + u.values[l0, : -2 * shift]
        assert np.max(np.abs(lhs - rhs)) <= 1e-10

    def test_exponent_matches_kernel_path(self):
        # |f| through the box kernel at matching exponent reproduces the
        # prefix-based average away from window edges
        grid = RealGrid(-8.0, 0.01, 1601)
        f = gaussian_signal(grid, width=2.0)
        a_axis = np.array([1.0, 2.0])
        u = average_transform(2.0, f, a_axis, grid)
        v = covariant(builtin("box_average"), 2.0, Signal(grid, np.abs(f.values)), a_axis, grid)
        inner = np.s_[:, 300:-300]
        assert rel_l2(v.values[inner], u.values[inner]) <= 1e-3


class TestFamilySup:
    def test_empty_family(self):
        grid = RealGrid(-2.0, 0.01, 401)
        with pytest.raises(ValueError):
            family_sup_transform([], 1.0, gaussian_signal(grid))

    def test_singleton(self):
        grid = RealGrid(-8.0, 0.01, 1601)
        f = gaussian_signal(grid)
        a_axis = np.array([1.0, 2.0])
        fid = builtin("box_average")
        sup = family_sup_transform([fid], 1.0, f, a_axis, grid)
        base = covariant(fid, 1.0, f, a_axis, grid)
        assert np.allclose(sup.values, np.abs(base.values), atol=1e-15)

    def test_sign_pair_gives_modulus(self):
        grid = RealGrid(-8.0, 0.01, 1601)
        f = ah.bandlimited_noise(grid, 0.3, 1.5, seed=10, envelope_width=3.0)
        kgrid = RealGrid(-1.0, 0.01, 201)
        rng = np.random.default_rng(0)
        steps = np.sign(rng.standard_normal(10))
        omega = np.repeat(steps, 20)[: kgrid.n].astype(complex)
        omega[0] = omega[-1] = 0.0
        fid_p = from_kernel_signal(Signal(kgrid, 0.5 * omega), "w")
        fid_m = from_kernel_signal(Signal(kgrid, -0.5 * omega), "-w")
        a_axis = np.array([1.0, 2.0])
        sup = family_sup_transform([fid_p, fid_m], 1.0, f, a_axis, grid)
        base = covariant(fid_p, 1.0, f, a_axis, grid)
        assert np.allclose(sup.values.real, np.abs(base.values), atol=1e-14)

    def test_unit_ball_bounded_by_average(self):
        # random +-1 step patterns supported strictly inside [-1, 1]; their
        # transforms stay under the modulus average once the inward sampling
        # margin a * dk exceeds a signal cell (here a >= 1)
        grid = RealGrid(-8.0, 0.01, 1601)
        f = gaussian_signal(grid, width=1.5)
        kgrid = RealGrid(-1.0, 0.01, 201)
        rng = np.random.default_rng(123)
        family = []
        for _ in range(32):
            steps = np.sign(rng.standard_normal(8))
            omega = np.repeat(steps, 25)[: kgrid.n].astype(complex)
            omega[0] = omega[-1] = 0.0
            family.append(from_kernel_signal(Signal(kgrid, 0.5 * omega), "w"))
        a_axis = np.array([1.0, 2.0, 4.0])
        sup = family_sup_transform(family, 1.0, f, a_axis, grid)
        avg = average_transform(1.0, f, a_axis, grid)
        assert np.all(sup.values.real <= avg.values.real + 1e-10)

    def test_rejects_nonlinear_member(self):
        grid = RealGrid(-2.0, 0.01, 401)
        with pytest.raises(ValueError):
            family_sup_transform(
                [builtin("modulus_average")], 1.0, gaussian_signal(grid)
            )


class TestWaveletTransform:
    def test_self_inner_product_at_identity(self):
        grid = RealGrid(-20.0, 0.01, 4001)
        f = gaussian_signal(grid)
        norm = lp_norm(f, 2)
        unit = Signal(grid, f.values / norm)
        u = wavelet_transform(unit, unit, np.array([0.5, 1.0, 2.0]), grid)
        i0 = np.argmin(np.abs(grid.points()))
        assert u.values[1, i0] == pytest.approx(1.0, abs=1e-6)

    def test_matches_inner_product_form(self):
        grid = RealGrid(-20.0, 0.01, 4001)
        f = ah.bandlimited_noise(grid, 0.2, 1.5, seed=12, envelope_width=4.0)
        mh = builtin("mexican_hat")
        v0 = Signal(grid, mh.kernel_at(grid.points()))
        u = wavelet_transform(v0, f, np.array([0.5, 1.0, 2.0]), grid)
        x = grid.points()
        for a, l in ((0.5, 0), (2.0, 2)):
            for b in (-1.3, 0.0, 2.1):
                j = np.argmin(np.abs(x - b))
                literal = wavelet_transform_inner(v0, f, GroupElement(a, x[j]))
                assert abs(u.values[l, j] - literal) <= 1e-8

    def test_even_wavelet_even_signal_parity(self):
        grid = RealGrid(-20.0, 0.01, 4001)
        f = gaussian_signal(grid, width=1.5)
        mh = builtin("mexican_hat")
        v0 = Signal(grid, mh.kernel_at(grid.points()))
        u = wavelet_transform(v0, f, np.array([0.5, 1.0, 2.0]), grid)
        assert np.max(np.abs(u.values - u.values[:, ::-1])) <= 1e-8

    def test_haar_energy_matches_admissibility_constant(self):
        from affharm.norms import haar_field_inner

        grid = RealGrid(-40.0, 0.02, 4001)
        f = ah.bandlimited_noise(grid, 0.2, 1.5, seed=14, envelope_width=6.0)
        mh = builtin("mexican_hat")
        v0 = Signal(grid, mh.kernel_at(grid.points()))
        u = wavelet_transform(v0, f, ah.log_axis(2 ** -6, 2 ** 6, 64), grid)
        energy = haar_field_inner(u, u).real
        k = ah.admissibility(v0).integral
        assert energy == pytest.approx(k * lp_norm(f, 2) ** 2, rel=0.05)
