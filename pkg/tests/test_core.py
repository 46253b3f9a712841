import cmath
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import admissible_configs, random_configs, wavenumber
from ptinvis import _kernels
from ptinvis.core import (
    ScatteringData,
    Side,
    SlabConfig,
    TransferMatrix,
    K_of_wavelength,
    aux_quantities,
    classify,
    invisibility_residuals,
    parity,
    pt_transform,
    scattering_data,
    time_reverse,
    transfer_matrices,
    transfer_matrix,
    verify_pt_matrix_rule,
    wavelength_of,
)
from ptinvis.errors import DomainError, RangeError, SingularPrefactorError, SpectralSingularityError


def layer_matrix(n1, n2, K):
    """Independent oracle: propagate plane waves layer by layer with interface matching."""

    def basis(n, z):
        e, f = cmath.exp(1j * K * n * z), cmath.exp(-1j * K * n * z)
        return np.array([[e, f], [1j * K * n * e, -1j * K * n * f]])

    # coefficients in vacuum on the left -> (psi, psi') at z=-1/2 -> through each layer
    state = basis(1, -0.5)
    for n, (za, zb) in ((n1, (-0.5, 0.0)), (n2, (0.0, 0.5))):
        c = np.linalg.solve(basis(n, za), state)
        state = basis(n, zb) @ c
    return np.linalg.solve(basis(1, 0.5), state)


class TestConfig:
    def test_rejects_zero_index(self):
        with pytest.raises(DomainError):
            SlabConfig(0, 2)

    def test_rejects_bad_thickness(self):
        with pytest.raises(DomainError):
            SlabConfig(2, 3, L=0)

    def test_exodic_flagged(self):
        with pytest.warns(RuntimeWarning):
            c = SlabConfig(0.5, 2)
        assert not c.admissible

    def test_admissible_no_warning(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert SlabConfig(1, 2.5 + 0.1j).admissible


class TestAux:
    def test_empty_slab(self):
        a = aux_quantities(SlabConfig(1, 1), 5)
        assert (a.n_plus, a.n_minus, a.n_tilde_plus, a.n_tilde_minus, a.a_plus, a.a_minus) == (2, 0, 2, 0, 5, 0)

    def test_pt_caption_values(self):
        a = aux_quantities(SlabConfig(3.4 - 0.003422j, 3.4 + 0.003422j), 2000.148)
        assert a.n_plus == pytest.approx(6.8, abs=1e-14)
        assert a.n_minus == pytest.approx(-0.006844j, abs=1e-14)

    def test_tilde_plus(self):
        a = aux_quantities(SlabConfig(2 + 1j, 1 - 1j), 1)
        assert a.n_tilde_plus == 4 - 1j
        assert 4 * (a.n_tilde_plus - 1) == pytest.approx(a.n_plus**2 - a.n_minus**2)

    def test_nonpositive_K(self):
        with pytest.raises(DomainError):
            aux_quantities(SlabConfig(1, 2), 0)

    @given(admissible_configs(), wavenumber)
    def test_identities(self, c, K):
        a = aux_quantities(c, K)
        assert abs(a.n_tilde_plus - a.n_tilde_minus - 2) <= 1e-12 * abs(a.n_tilde_plus)
        lhs, rhs = 4 * (a.n_tilde_plus - 1), a.n_plus**2 - a.n_minus**2
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


class TestTransferMatrix:
    def test_empty_slab_identity(self):
        for K in (0.1, 3.0, 2000.0):
            M = transfer_matrix(SlabConfig(1, 1), K).array
            assert np.allclose(M, np.eye(2), atol=1e-14, rtol=0)

    def test_singular_prefactor(self):
        # n1 n2 = 0 cannot be built as a config; the guard is exercised directly
        from ptinvis.core import _guard

        with pytest.raises(SingularPrefactorError):
            _guard(0j, 2 + 0j, 1.0)

    def test_range_guard(self):
        with pytest.raises(RangeError):
            transfer_matrix(SlabConfig(2 + 0.1j, 3), 2000)

    def test_equal_layers_continuous(self):
        c = SlabConfig(2.5 + 0.001j, 2.5 + 0.001j)
        M = transfer_matrix(c, 40.0).array
        n, K = c.n1, 40.0
        # homogeneous slab, textbook result
        m11 = (cmath.cos(n * K) + 0.5j * (n + 1 / n) * cmath.sin(n * K)) * cmath.exp(-1j * K)
        assert M[0, 0] == pytest.approx(m11, rel=1e-12)
        assert M[0, 1] == pytest.approx(0.5j * (n - 1 / n) * cmath.sin(n * K), rel=1e-10)

    def test_matches_layer_propagation(self):
        for c in random_configs(20, seed=7, im_max=1e-2):
            for K in (0.5, 37.5, 512.0):
                M = transfer_matrix(c, K).array
                ref = layer_matrix(c.n1, c.n2, K)
                assert np.max(np.abs(M - ref)) <= 1e-9 * np.max(np.abs(ref))

    def test_pt_caption_truncated(self):
        sd = scattering_data(transfer_matrix(SlabConfig(3.4 - 0.003422j, 3.4 + 0.003422j), 2000.148))
        assert sd.rlCoeff < 1e-5
        assert abs(sd.tCoeff - 1) < 3e-3

    @settings(max_examples=200)
    @given(admissible_configs(), st.floats(1.0, 1e4))
    def test_unit_determinant(self, c, K):
        M = transfer_matrix(c, K)
        # m11 m22 - m12 m21 cancels terms of size |M|^2
        scale = max(1.0, float(np.max(np.abs(M.array))) ** 2)
        assert abs(M.det() - 1) <= 1e-10 * scale

    def test_vectorised_matches_scalar(self):
        c = SlabConfig(2.3 + 0.01j, 1.7 - 0.02j)
        K = np.linspace(1, 300, 57)
        V = transfer_matrices(c, K)
        for k, row in zip(K, V):
            assert np.allclose(row, transfer_matrix(c, k).array.ravel(), rtol=1e-13, atol=0)

    def test_vectorised_rejects_bad_K(self):
        with pytest.raises(DomainError):
            transfer_matrices(SlabConfig(2, 3), [1.0, -1.0])


class TestScattering:
    def test_identity(self):
        sd = scattering_data(TransferMatrix(1, 0, 0, 1))
        assert (sd.T, sd.Rl, sd.Rr) == (1, 0, 0)

    def test_spectral_singularity(self):
        with pytest.raises(SpectralSingularityError):
            scattering_data(TransferMatrix(1, 0, 0, 0))

    @given(
        st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
    )
    def test_round_trip(self, m12, m21, m22):
        m11 = (1 + m12 * m21) / m22
        M = TransferMatrix(m11, m12, m21, m22)
        back = scattering_data(M).to_transfer_matrix().array
        scale = np.max(np.abs(M.array))
        assert np.max(np.abs(back - M.array)) <= 1e-12 * scale


class TestTransforms:
    @given(admissible_configs())
    def test_involutions(self, c):
        assert pt_transform(pt_transform(c)) == c
        assert time_reverse(time_reverse(c)) == c
        assert parity(parity(c)) == c

    def test_pt_fixed_point(self):
        c = SlabConfig(3.4 - 0.003422j, 3.4 + 0.003422j)
        assert pt_transform(c) == c and c.is_pt_symmetric

    def test_pt_of_nonpt_example(self):
        c = SlabConfig(3.402510 + 6.062508e-4j, 1.402514 - 1.788281e-3j)
        p = pt_transform(c)
        assert p.n1 == 1.402514 + 1.788281e-3j and p.n2 == 3.402510 - 6.062508e-4j

    def test_time_reverse_real_unchanged(self):
        c = SlabConfig(2.0, 3.5)
        assert time_reverse(c) == c

    def test_time_reverse_flips_imag(self):
        c = SlabConfig(3.402510 + 6.062508e-4j, 1.402514 - 1.788281e-3j)
        t = time_reverse(c)
        assert t.n1 == 3.402510 - 6.062508e-4j and t.n2 == 1.402514 + 1.788281e-3j

    @settings(max_examples=150)
    @given(admissible_configs(), wavenumber)
    def test_pt_rule(self, c, K):
        assert verify_pt_matrix_rule(c, K) <= 1e-10

    def test_pt_rule_empty(self):
        assert verify_pt_matrix_rule(SlabConfig(1, 1), 12.0) == 0.0

    @given(admissible_configs(), wavenumber)
    def test_conjugate_swaps_reflection(self, c, K):
        M, Mc = transfer_matrix(c, K), transfer_matrix(time_reverse(c), K)
        assert abs(abs(M.m21) - abs(Mc.m12)) <= 1e-10

    @given(admissible_configs(), wavenumber)
    def test_parity_swaps_reflection(self, c, K):
        s = scattering_data(transfer_matrix(c, K))
        p = scattering_data(transfer_matrix(parity(c), K))
        assert abs(abs(s.Rl) - abs(p.Rr)) <= 1e-10 * max(1.0, abs(s.Rl))
        assert abs(abs(s.Rr) - abs(p.Rl)) <= 1e-10 * max(1.0, abs(s.Rr))


class TestClassification:
    def test_empty_both(self):
        r = invisibility_residuals(SlabConfig(1, 1), 10.0)
        assert r.side is Side.BOTH
        assert max(abs(v) for v in (r.r_m21, r.r_m12, r.r_m11, r.r_m22)) <= 1e-15

    def test_golden_left(self, golden_pt):
        c, K = golden_pt
        r = invisibility_residuals(c, K)
        assert abs(r.r_m21) ** 2 < 1e-10
        sd = scattering_data(transfer_matrix(c, K))
        assert abs(sd.tCoeff - 1) < 1e-5 and sd.rrCoeff > 0.89
        assert r.side is Side.LEFT

    def test_flipped_kappa_right(self, golden_pt):
        c, K = golden_pt
        assert classify(time_reverse(c), K) is Side.RIGHT

    def test_indeterminate_band(self):
        from ptinvis.core import InvisibilityResiduals

        r = InvisibilityResiduals(1e-3, 1.0, 0, 0)  # |m21|^2 = 1e-6 sits in the gap
        assert r.side is None and r.indeterminate
        r = InvisibilityResiduals(1.0, 1.0, 0, 0)
        assert r.side is None and not r.indeterminate

    def test_visible_generic(self):
        assert classify(SlabConfig(2, 3), 1.0) is None

    def test_as_dict(self, golden_pt):
        d = invisibility_residuals(*golden_pt).as_dict()
        assert d["side"] == "left" and not d["indeterminate"]


class TestWavelength:
    def test_reference_wavelengths(self):
        assert wavelength_of(2000.147552, 300e-6) == pytest.approx(942.408269, abs=1e-6)
        assert wavelength_of(1998.049925, 300e-6) == pytest.approx(943.397644, abs=1e-6)

    def test_trivial(self):
        assert wavelength_of(2 * math.pi, 1e-6) == pytest.approx(1000.0, rel=1e-15)

    def test_errors(self):
        with pytest.raises(DomainError):
            wavelength_of(-1, 1e-6)
        with pytest.raises(DomainError):
            wavelength_of(1, 0)

    def test_inverse(self):
        assert K_of_wavelength(wavelength_of(1234.5, 3e-4), 3e-4) == pytest.approx(1234.5, rel=1e-14)


def test_scattering_coefficients():
    sd = ScatteringData(T=2j, Rl=0.5, Rr=-1)
    assert (sd.tCoeff, sd.rlCoeff, sd.rrCoeff) == (4, 0.25, 1)


def test_kernel_flag_consistency():
    if _kernels.closed_form_numba is None:
        pytest.skip("numba unavailable")
    K = np.linspace(1, 3000, 101)
    a = _kernels.closed_form_numba(2.3 + 1e-3j, 1.7 - 2e-3j, K)
    b = _kernels.closed_form_numpy(2.3 + 1e-3j, 1.7 - 2e-3j, K)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(b))
