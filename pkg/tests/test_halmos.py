import numpy as np
import pytest
import scipy.linalg

from pgrass.blockop import BlockOperator, Splitting, commutator_with_eplus
from pgrass.errors import InvalidP, ToleranceBreakdown
from pgrass.halmos import commutator_norm_via_angles, halmos_decompose
from pgrass.linalg import op_norm, schatten_norm
from pgrass.rng import random_projection

from test_spectral import angle_projection


class TestDecompose:
    def test_p_equals_eplus(self, splitting):
        H = halmos_decompose(BlockOperator.eplus(splitting))
        assert H.dim_11 == splitting.dim_plus
        assert H.dim_00 == splitting.dim_minus
        assert H.dim_10 == H.dim_01 == 0
        assert H.generic_half_dim == 0
        assert H.angles == ()

    def test_2x2_angle(self):
        g = 0.8
        H = halmos_decompose(angle_projection(g))
        assert H.generic_half_dim == 1
        assert (H.dim_11, H.dim_00, H.dim_10, H.dim_01) == (0, 0, 0, 0)
        gamma, mult = H.angles[0]
        assert mult == 1
        # The angle equals arcsin of the corner entry scale.
        assert gamma == pytest.approx(np.arcsin(np.sin(g)), abs=1e-12)

    def test_angles_match_scipy_subspace_angles(self, rng):
        sp = Splitting(6, 6)
        P = random_projection(rng, sp, rank=5)
        H = halmos_decompose(P)
        eig = np.linalg.eigh(P.dense())
        W = eig[1][:, eig[0] > 0.5]
        U = np.eye(12)[:, :6]
        ref = np.sort(scipy.linalg.subspace_angles(U, W))
        ours = np.sort(H.angle_array())
        nontrivial = ref[(ref > 1e-7) & (ref < np.pi / 2 - 1e-7)]
        np.testing.assert_allclose(ours, nontrivial, atol=1e-8)

    def test_reassembly_random(self, rng):
        sp = Splitting(16, 16)
        for _ in range(5):
            P = random_projection(rng, sp)
            H = halmos_decompose(P)
            B = H.basis
            n = sp.total
            assert op_norm(B.conj().T @ B - np.eye(n)) <= 1e-10
            # In the decomposition frame, E+ is diagonal 1/0/0/1 on the
            # intersections and diag(1, 0) on the generic frame.
            E = BlockOperator.eplus(sp).dense()
            M = B.conj().T @ E @ B
            off = H.dim_11 + H.dim_00 + H.dim_10 + H.dim_01
            m = H.generic_half_dim
            expected = np.zeros((n, n))
            expected[: H.dim_11, : H.dim_11] = np.eye(H.dim_11)
            i01 = H.dim_11 + H.dim_00 + H.dim_10
            expected[i01:off, i01:off] = np.eye(H.dim_01)
            expected[off : off + m, off : off + m] = np.eye(m)
            assert np.abs(M - expected).max() <= 1e-8
            # And P is the angle matrix there.
            gamma = H.angle_array()
            C, S = np.cos(gamma), np.sin(gamma)
            MP = B.conj().T @ P.dense() @ B
            model = np.zeros((n, n))
            model[: H.dim_11, : H.dim_11] = np.eye(H.dim_11)
            i10 = H.dim_11 + H.dim_00
            model[i10:i01, i10:i01] = np.eye(H.dim_10)
            model[off : off + m, off : off + m] = np.diag(C * C)
            model[off : off + m, off + m :] = np.diag(C * S)
            model[off + m :, off : off + m] = np.diag(C * S)
            model[off + m :, off + m :] = np.diag(S * S)
            assert np.abs(MP - model).max() <= 1e-8

    def test_dimension_bookkeeping(self, rng, splitting):
        for _ in range(10):
            P = random_projection(rng, splitting)
            H = halmos_decompose(P)
            total = (
                H.dim_11 + H.dim_00 + H.dim_10 + H.dim_01 + 2 * H.generic_half_dim
            )
            assert total == splitting.total

    def test_general_reference_pair(self, rng, splitting):
        P = random_projection(rng, splitting)
        Q = random_projection(rng, splitting)
        H = halmos_decompose(P, Q)
        assert (
            H.dim_11 + H.dim_00 + H.dim_10 + H.dim_01 + 2 * H.generic_half_dim
            == splitting.total
        )

    def test_tolerance_breakdown(self):
        # A cosine deviation of 5e-8 from 1 sits inside the declared
        # ambiguity band [1e-8, 1e-7).
        g = np.sqrt(2 * 5e-8)
        with pytest.raises(ToleranceBreakdown):
            halmos_decompose(angle_projection(g))

    def test_degenerate_projections(self):
        sp = Splitting(3, 4)
        H0 = halmos_decompose(BlockOperator.zero(sp))
        assert (H0.dim_11, H0.dim_00, H0.dim_10, H0.dim_01) == (0, 4, 0, 3)
        H1 = halmos_decompose(BlockOperator.identity(sp))
        assert (H1.dim_11, H1.dim_00, H1.dim_10, H1.dim_01) == (3, 0, 4, 0)
        assert H0.generic_half_dim == H1.generic_half_dim == 0


class TestCommutatorNorm:
    def test_empty_generic_part(self, splitting):
        H = halmos_decompose(BlockOperator.eplus(splitting))
        assert commutator_norm_via_angles(H, 2) == 0.0

    def test_single_pi_over_4(self):
        # cos sin = 1/2 at pi/4; p = 2 gives 2^(1/2) * (1/4)^(1/2).
        H = halmos_decompose(angle_projection(np.pi / 4))
        assert commutator_norm_via_angles(H, 2) == pytest.approx(
            np.sqrt(2.0) / 2.0, abs=1e-12
        )

    @pytest.mark.parametrize("p", [1, 2, 3, np.inf])
    def test_matches_direct_commutator(self, rng, p):
        sp = Splitting(8, 8)
        for _ in range(10):
            P = random_projection(rng, sp)
            H = halmos_decompose(P)
            direct = schatten_norm(commutator_with_eplus(P).dense(), p)
            assert commutator_norm_via_angles(H, p) == pytest.approx(
                direct, abs=1e-8
            )

    def test_invalid_p(self, splitting):
        H = halmos_decompose(BlockOperator.eplus(splitting))
        with pytest.raises(InvalidP):
            commutator_norm_via_angles(H, 0.5)

    @pytest.mark.parametrize("dims", [8, 16, 32])
    def test_consistency_ladder(self, dims):
        from pgrass.rng import make_rng

        rng = make_rng(1000 + dims)
        sp = Splitting(dims // 2, dims // 2)
        worst = 0.0
        for _ in range(100):
            P = random_projection(rng, sp)
            H = halmos_decompose(P)
            for p in (1, 2, 3):
                direct = schatten_norm(commutator_with_eplus(P).dense(), p)
                worst = max(worst, abs(direct - commutator_norm_via_angles(H, p)))
        assert worst <= 1e-8


class TestNormFromAngles:
    def test_distance_to_eplus_is_max_sin(self, rng, splitting):
        ep = BlockOperator.eplus(splitting)
        for _ in range(10):
            P = random_projection(rng, splitting)
            H = halmos_decompose(P)
            expected = 0.0
            gamma = H.angle_array()
            if gamma.size:
                expected = float(np.sin(gamma).max())
            if H.dim_10 + H.dim_01:
                expected = 1.0
            assert op_norm((P - ep).dense()) == pytest.approx(expected, abs=1e-8)

    def test_intersections_contribute_one(self):
        # R(P) & H- forces distance exactly 1.
        sp = Splitting(2, 2)
        P = BlockOperator(
            sp, np.diag([1.0, 0.0]), np.zeros((2, 2)), np.zeros((2, 2)),
            np.diag([1.0, 0.0]),
        )
        H = halmos_decompose(P)
        assert H.dim_10 == 1
        ep = BlockOperator.eplus(sp)
        assert op_norm((P - ep).dense()) == pytest.approx(1.0, abs=1e-12)
