import numpy as np
import pytest

from pgrass.blockop import BlockOperator
from pgrass.errors import RangeViolation, SymbolVanishes
from pgrass.gallery import (
    FourierConfig,
    HardyConfig,
    fourier_projection,
    hardy_projection,
    idempotent_range_projection,
    winding_number,
)
from pgrass.halmos import halmos_decompose
from pgrass.linalg import op_norm, schatten_norm
from pgrass.models import ClassLabel, index_of
from pgrass.rng import make_rng
from pgrass.spectral import extract_picture, verify_pairing


class TestHardyMonomial:
    def test_constant_symbol_is_eplus(self):
        P, expected, info = hardy_projection(HardyConfig(modes=8, k=0))
        np.testing.assert_array_equal(
            P.dense(), BlockOperator.eplus(P.splitting).dense()
        )
        assert expected == ClassLabel("D3", 0)
        assert info["trace_index"] == 0

    def test_z_cubed(self):
        P, expected, info = hardy_projection(HardyConfig(modes=16, k=3))
        assert expected == ClassLabel("D3", -3)
        assert info["trace_index"] == -3

    def test_negative_power(self):
        P, expected, info = hardy_projection(HardyConfig(modes=16, k=-2))
        assert expected == ClassLabel("D3", 2)
        assert index_of(P, BlockOperator.eplus(P.splitting)) == 2

    @pytest.mark.parametrize("k", range(-5, 6))
    def test_rank_and_trace_exact(self, k):
        P, expected, info = hardy_projection(HardyConfig(modes=16, k=k))
        diff = (P - BlockOperator.eplus(P.splitting)).dense()
        assert np.linalg.matrix_rank(diff) == abs(k)
        assert float(np.trace(diff).real) == pytest.approx(-k, abs=1e-12)

    def test_k_exceeds_window(self):
        with pytest.raises(RangeViolation):
            HardyConfig(modes=4, k=5)


class TestWinding:
    def test_monomial(self):
        assert winding_number(HardyConfig(modes=8, k=3)) == 3

    def test_perturbed_monomial(self):
        # z^2 (1 + 0.3 z) keeps winding 2: the zero sits inside |z| < 1
        # only for the z^2 factor.
        cfg = HardyConfig(modes=8, phi=(1.0, 0.3), min_power=2)
        assert winding_number(cfg) == 2

    def test_dominant_constant(self):
        # 2 + z never circles the origin.
        assert winding_number(HardyConfig(modes=8, phi=(2.0, 1.0))) == 0

    def test_zero_inside_disk(self):
        # 0.5 + z has its zero at -1/2, inside the disk: winding 1.
        assert winding_number(HardyConfig(modes=8, phi=(0.5, 1.0))) == 1

    def test_vanishing_symbol(self):
        with pytest.raises(SymbolVanishes):
            winding_number(HardyConfig(modes=8, phi=(1.0, 1.0)))  # zero at -1


class TestHardyGeneral:
    def test_expected_class_from_winding(self):
        P, expected, info = hardy_projection(
            HardyConfig(modes=16, phi=(1.0, 0.3), min_power=2)
        )
        assert expected == ClassLabel("D3", -2)
        assert info["winding"] == 2

    def test_truncation_trace_pins_top_degree(self):
        # At finite scale the spanning set has N - deg+ + 1 members, so
        # the trace index reads -deg+ whatever the winding is.
        P, expected, info = hardy_projection(
            HardyConfig(modes=16, phi=(2.0, 1.0))
        )
        assert expected == ClassLabel("D3", 0)
        assert info["trace_index"] == -1
        assert not info["trace_matches_expected"]

    def test_projection_quality_and_pairing(self):
        P, _, _ = hardy_projection(
            HardyConfig(modes=12, phi=(1.0, 0.4, 0.1), min_power=-1)
        )
        D = P.dense()
        assert op_norm(D @ D - D) <= 1e-10
        rep = verify_pairing(P, 1e-8)
        assert rep.ok

    def test_subspace_dimension(self):
        cfg = HardyConfig(modes=10, phi=(1.0, 0.5), min_power=0)
        P, _, info = hardy_projection(cfg)
        assert info["subspace_dim"] == 10  # j = 0 .. N - 1


class TestFourier:
    def make(self, n=16, s_lo=0, s_hi=4, t_lo=5, t_hi=9):
        return FourierConfig(
            n,
            tuple(s_lo <= i < s_hi for i in range(n)),
            tuple(t_lo <= i < t_hi for i in range(n)),
        )

    def test_is_projection_in_ap(self):
        P, rep = fourier_projection(self.make())
        D = P.dense()
        assert op_norm(D @ D - D) <= 1e-12
        assert op_norm(D - D.conj().T) <= 1e-12
        assert rep.trace_norm_eplus_p < np.inf

    def test_lenard_intersections_trivial(self):
        _, rep = fourier_projection(self.make())
        assert rep.dim_range_range == 0
        assert rep.dim_range_null == 0
        assert rep.dim_null_range == 0

    def test_commutator_identity(self):
        _, rep = fourier_projection(self.make())
        assert rep.commutator_identity_residual <= 1e-12

    def test_trace_norm_identity(self):
        from pgrass.blockop import commutator_with_eplus

        P, _ = fourier_projection(self.make())
        ep = BlockOperator.eplus(P.splitting)
        one = BlockOperator.identity(P.splitting)
        lhs = schatten_norm((-commutator_with_eplus(P)).dense(), 1)
        rhs = 2.0 * schatten_norm((ep @ P @ (one - ep)).dense(), 1)
        assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_oversized_supports_must_intersect(self):
        n = 16
        cfg = FourierConfig(
            n, tuple(i < 10 for i in range(n)), tuple(i < 10 for i in range(n))
        )
        _, rep = fourier_projection(cfg)
        assert rep.dim_range_range >= 10 + 10 - n

    def test_mask_validation(self):
        n = 8
        with pytest.raises(RangeViolation):
            FourierConfig(n, (True,) * n, tuple(i < 2 for i in range(n)))

    def test_pairing_on_dft_projection(self):
        P, _ = fourier_projection(self.make())
        assert verify_pairing(P, 1e-8).ok


class TestIdempotentRange:
    def test_b_zero_gives_eplus(self):
        P, expected = idempotent_range_projection(np.zeros((3, 3)))
        np.testing.assert_array_equal(
            P.dense(), BlockOperator.eplus(P.splitting).dense()
        )
        assert expected == ClassLabel("D3", 0)

    def test_scalar_one(self):
        P, _ = idempotent_range_projection([[1.0]])
        np.testing.assert_allclose(P.dense().real, 0.5 * np.ones((2, 2)), atol=1e-15)

    def test_random_batch(self):
        rng = make_rng(33)
        for _ in range(50):
            B = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            P, expected = idempotent_range_projection(B)
            D = P.dense()
            assert op_norm(D @ D - D) <= 1e-10
            assert op_norm(D - D.conj().T) <= 1e-10
            assert index_of(P, BlockOperator.eplus(P.splitting)) == 0
            s = np.linalg.svd(B, compute_uv=False)
            s12 = np.linalg.svd(P.a12, compute_uv=False)
            np.testing.assert_allclose(
                s12, np.sort(s / (1.0 + s * s))[::-1], atol=1e-10
            )

    def test_range_is_range_of_e_star(self):
        rng = make_rng(34)
        B = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        P, _ = idempotent_range_projection(B)
        # R(E*) is spanned by the columns of [I; B*].
        C = np.vstack([np.eye(4), B.conj().T])
        assert op_norm(P.dense() @ C - C) <= 1e-10
        assert np.linalg.matrix_rank(P.dense()) == 4

    def test_principal_angles_are_arctan_of_svals(self):
        rng = make_rng(35)
        B = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        P, _ = idempotent_range_projection(B)
        H = halmos_decompose(P)
        s = np.sort(np.linalg.svd(B, compute_uv=False))
        np.testing.assert_allclose(np.tan(np.sort(H.angle_array())), s, atol=1e-8)

    def test_gallery_outputs_pass_picture_checks(self):
        rng = make_rng(36)
        B = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        P, _ = idempotent_range_projection(B)
        pic = extract_picture(P, 1e-8)
        assert pic.dims() == (4, 4)
        rep = verify_pairing(P, 1e-8)
        assert rep.ok and rep.max_residual <= 1e-8
