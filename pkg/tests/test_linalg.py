import numpy as np
import pytest

from expander import (
    AngleProfile,
    DegenerateIntersection,
    RankTolerance,
    Subspace,
    ZeroMatrix,
    ZeroProjection,
    deflect,
    orthonormal_complement,
    orthonormalize,
    principal_angles,
    project,
    pseudo_inverse,
    subspace_sum,
    tangent_norm,
    tangent_profile,
    tangent_upper_bound,
)


def gram_schmidt(M):
    """Reference orthonormalization, used as an independent oracle."""
    cols = []
    for j in range(M.shape[1]):
        v = M[:, j].astype(float)
        for u in cols:
            v = v - (u @ v) * u
        nv = np.linalg.norm(v)
        if nv > 1e-10:
            cols.append(v / nv)
    return np.column_stack(cols)


class TestRankTolerance:
    def test_default(self):
        assert RankTolerance().relative_cutoff == 1e-10

    @pytest.mark.parametrize("bad", [0.0, 1.0, -1e-3, 2.0])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            RankTolerance(bad)


class TestSubspace:
    def test_accepts_orthonormal(self):
        S = Subspace(np.eye(4)[:, :2])
        assert (S.n, S.k) == (4, 2)

    def test_rejects_non_orthonormal(self):
        with pytest.raises(ValueError):
            Subspace(np.ones((3, 2)))

    def test_rejects_wide(self):
        with pytest.raises(ValueError):
            Subspace(np.eye(2, 3))

    def test_basis_is_read_only(self):
        S = Subspace(np.eye(3)[:, :1])
        with pytest.raises(ValueError):
            S.basis[0, 0] = 2.0


class TestAngleProfile:
    def test_derived_trig(self):
        p = AngleProfile(np.array([0.0, np.pi / 4, np.pi / 2]))
        assert np.allclose(p.cosines, [1.0, np.sqrt(0.5), np.cos(np.pi / 2)])
        assert np.allclose(p.sines, [0.0, np.sqrt(0.5), 1.0])
        assert p.tangents[-1] == np.inf
        assert p.theta_max == np.pi / 2

    def test_rejects_decreasing(self):
        with pytest.raises(ValueError):
            AngleProfile(np.array([0.5, 0.1]))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            AngleProfile(np.array([-0.1]))
        with pytest.raises(ValueError):
            AngleProfile(np.array([np.pi]))


class TestOrthonormalize:
    @pytest.mark.parametrize("seed", range(5))
    def test_matches_gram_schmidt_span(self, seed):
        rng = np.random.default_rng(seed)
        M = rng.standard_normal((30, 6))
        S = orthonormalize(M)
        G = gram_schmidt(M)
        assert S.k == G.shape[1]
        # same span iff all principal angles vanish
        assert principal_angles(S, Subspace(G)).theta_max < 1e-10

    def test_rank_deficient(self):
        M = np.ones((10, 3))
        assert orthonormalize(M).k == 1

    def test_zero_matrix_raises(self):
        with pytest.raises(ZeroMatrix):
            orthonormalize(np.zeros((4, 2)))


class TestPseudoInverse:
    @pytest.mark.parametrize("seed", range(3))
    def test_penrose_identities(self, seed):
        rng = np.random.default_rng(seed)
        M = rng.standard_normal((8, 5)) @ np.diag([3.0, 2.0, 1.0, 1e-14, 0.0]) @ rng.standard_normal((5, 5))
        P = pseudo_inverse(M)
        assert np.allclose(M @ P @ M, M, atol=1e-8)
        assert np.allclose(P @ M @ P, P, atol=1e-8)
        assert np.allclose((M @ P).T, M @ P, atol=1e-8)
        assert np.allclose((P @ M).T, P @ M, atol=1e-8)


class TestComplement:
    def test_orthogonal_and_spanning(self):
        rng = np.random.default_rng(0)
        S = orthonormalize(rng.standard_normal((12, 4)))
        C = orthonormal_complement(S)
        assert C.k == 8
        assert np.max(np.abs(S.basis.T @ C.basis)) < 1e-12

    def test_full_space_raises(self):
        with pytest.raises(ValueError):
            orthonormal_complement(Subspace(np.eye(3)))


class TestPrincipalAngles:
    def test_known_plane_angle(self):
        # rotate e1 by phi inside the (e1, e2) plane
        for phi in (0.3, 1.2, np.pi / 2):
            X = Subspace(np.eye(3)[:, :1])
            y = np.array([[np.cos(phi)], [np.sin(phi)], [0.0]])
            assert abs(principal_angles(X, Subspace(y)).theta_max - phi) < 1e-12

    def test_identical_subspaces(self):
        rng = np.random.default_rng(1)
        S = orthonormalize(rng.standard_normal((10, 3)))
        assert principal_angles(S, S).theta_max < 1e-12

    def test_orthogonal_subspaces(self):
        X = Subspace(np.eye(4)[:, :2])
        Y = Subspace(np.eye(4)[:, 2:])
        assert np.allclose(principal_angles(X, Y).angles, np.pi / 2)

    def test_small_angle_accuracy(self):
        # the sine-based branch keeps relative accuracy for tiny angles
        eps = 1e-9
        X = Subspace(np.eye(3)[:, :1])
        y = np.array([[np.cos(eps)], [np.sin(eps)], [0.0]])
        got = principal_angles(X, Subspace(y)).theta_max
        assert abs(got - eps) < 1e-15

    def test_symmetry_in_arguments(self):
        rng = np.random.default_rng(2)
        X = orthonormalize(rng.standard_normal((20, 3)))
        V = orthonormalize(rng.standard_normal((20, 7)))
        a = principal_angles(X, V).angles
        b = principal_angles(V, X).angles
        assert np.allclose(a, b, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            principal_angles(Subspace(np.eye(3)[:, :1]), Subspace(np.eye(4)[:, :1]))


class TestTangents:
    @pytest.mark.parametrize("seed", range(5))
    def test_profile_matches_angle_tangents(self, seed):
        rng = np.random.default_rng(seed)
        X = orthonormalize(rng.standard_normal((25, 3)))
        V = orthonormalize(rng.standard_normal((25, 8)))
        got = np.sort(tangent_profile(X, V))
        want = np.sort(principal_angles(X, V).tangents)
        assert np.allclose(got, want, rtol=1e-8)

    def test_degenerate_intersection(self):
        X = Subspace(np.eye(6)[:, :2])
        V = Subspace(np.eye(6)[:, 3:5])
        with pytest.raises(DegenerateIntersection):
            tangent_profile(X, V)

    @pytest.mark.parametrize("seed", range(5))
    def test_upper_bound_dominates(self, seed):
        rng = np.random.default_rng(seed)
        X = Subspace(np.eye(15)[:, :2])
        X_perp = orthonormal_complement(X)
        V_raw = rng.standard_normal((15, 5)) @ np.diag(rng.uniform(0.5, 3.0, 5))
        bound = np.sort(tangent_upper_bound(X, X_perp, V_raw))[::-1]
        exact = tangent_profile(X, orthonormalize(V_raw))
        assert np.all(exact <= bound + 1e-8)

    def test_zero_projection_raises(self):
        X = Subspace(np.eye(5)[:, :2])
        X_perp = orthonormal_complement(X)
        V_raw = np.eye(5)[:, 2:4]
        with pytest.raises(ZeroProjection):
            tangent_upper_bound(X, X_perp, V_raw)


class TestProjectors:
    def test_project_plus_deflect(self):
        rng = np.random.default_rng(3)
        S = orthonormalize(rng.standard_normal((12, 4)))
        M = rng.standard_normal((12, 6))
        assert np.allclose(project(S, M) + deflect(S, M), M)

    def test_idempotence(self):
        rng = np.random.default_rng(4)
        S = orthonormalize(rng.standard_normal((12, 4)))
        M = rng.standard_normal((12, 6))
        assert np.allclose(project(S, project(S, M)), project(S, M))
        assert np.allclose(deflect(S, deflect(S, M)), deflect(S, M))


class TestSubspaceSum:
    def test_self_sum_is_identity(self):
        rng = np.random.default_rng(5)
        U = orthonormalize(rng.standard_normal((20, 4)))
        W = subspace_sum(U, U)
        assert W.k == 4
        assert np.allclose(W.basis, U.basis)

    def test_generic_dimensions_and_containment(self):
        rng = np.random.default_rng(6)
        U = orthonormalize(rng.standard_normal((50, 5)))
        V = orthonormalize(rng.standard_normal((50, 7)))
        W = subspace_sum(U, V)
        assert W.k == 12
        assert principal_angles(U, W).theta_max < 1e-10
        assert principal_angles(V, W).theta_max < 1e-10

    def test_result_is_orthonormal(self):
        rng = np.random.default_rng(7)
        W = subspace_sum(
            orthonormalize(rng.standard_normal((40, 10))),
            orthonormalize(rng.standard_normal((40, 10))),
        )
        # Subspace's constructor would have rejected a non-orthonormal basis
        assert np.max(np.abs(W.basis.T @ W.basis - np.eye(W.k))) < 1e-12


class TestTangentNorm:
    def test_op_and_fro(self):
        p = AngleProfile(np.array([np.pi / 6, np.pi / 4]))
        assert tangent_norm(p, "op") == pytest.approx(1.0)
        assert tangent_norm(p, "fro") == pytest.approx(np.sqrt(np.tan(np.pi / 6) ** 2 + 1.0))

    def test_right_angle_gives_inf(self):
        p = AngleProfile(np.array([np.pi / 2]))
        assert tangent_norm(p, "op") == np.inf
        assert tangent_norm(p, "fro") == np.inf

    def test_unknown_norm(self):
        with pytest.raises(ValueError):
            tangent_norm(AngleProfile(np.array([0.1])), "nuc")
