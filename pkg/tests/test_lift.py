import numpy as np
import pytest

from kronlift.errors import DegenerateLiftError, DimensionError
from kronlift.lift import LiftedSystem, build_lifted, monomial_embedding
from kronlift.system_model import PolynomialSystem, eval_residual, random_system


class TestBuildLifted:
    def test_scalar_quadratic(self):
        sys = PolynomialSystem(D=[[2.0]], b=[5.0], G=[[3.0]])
        lift = build_lifted(sys)
        np.testing.assert_array_equal(lift.P, [[2.0, 3.0]])
        assert lift.m == 2
        assert [blk.degree for blk in lift.blocks] == [1, 2]

    def test_scalar_cubic(self):
        sys = PolynomialSystem(D=[[0.0]], b=[8.0], R=[[1.0]])
        lift = build_lifted(sys)
        np.testing.assert_array_equal(lift.P, [[0.0, 1.0]])
        assert [blk.degree for blk in lift.blocks] == [1, 3]
        assert lift.m == 2

    def test_quadratic_shape(self):
        lift = build_lifted(random_system(2, 2, seed=0))
        assert lift.P.shape == (2, 5)

    def test_degree1_block_is_d(self):
        sys = random_system(4, 2, seed=3)
        lift = build_lifted(sys)
        np.testing.assert_array_equal(lift.P[:, :4], sys.D)

    def test_column_count_formula(self):
        for n in (1, 2, 3, 5):
            quad = build_lifted(random_system(n, 2, seed=n))
            assert quad.m == n + n * (n + 1) // 2
            cub = build_lifted(random_system(n, 3, seed=n))
            assert cub.m == n + n * (n + 1) * (n + 2) // 6
        # both blocks at once
        base = random_system(3, 2, seed=9)
        cubic = random_system(3, 3, seed=9)
        both = PolynomialSystem(D=base.D, b=base.b, G=base.G, R=cubic.R)
        lift = build_lifted(both)
        assert lift.m == 3 + 6 + 10
        assert [blk.degree for blk in lift.blocks] == [1, 2, 3]

    def test_rejects_purely_linear(self):
        with pytest.raises(DegenerateLiftError):
            build_lifted(PolynomialSystem(D=np.eye(3), b=np.ones(3)))


class TestMonomialEmbedding:
    def test_n2_products(self):
        lift = build_lifted(random_system(2, 2, seed=1))
        y = monomial_embedding(lift, [2.0, 3.0])
        np.testing.assert_allclose(y, [2.0, 3.0, 4.0, 6.0, 9.0])

    def test_zero_maps_to_zero(self):
        lift = build_lifted(random_system(3, 3, seed=2))
        np.testing.assert_array_equal(monomial_embedding(lift, np.zeros(3)), np.zeros(lift.m))

    def test_length_mismatch(self):
        lift = build_lifted(random_system(2, 2, seed=1))
        with pytest.raises(DimensionError):
            monomial_embedding(lift, np.zeros(3))


class TestLiftEquivalence:
    """P y(x) must reproduce the nonlinear action exactly; eval_residual is
    the independent oracle."""

    def test_equivalence_over_seeds(self):
        rng = np.random.default_rng(100)
        for seed in range(25):
            n = 1 + seed % 6
            degree = 2 if seed % 2 == 0 else 3
            sys = random_system(n, degree, seed=seed)
            lift = build_lifted(sys)
            scale = 1e-12 * (1.0 + np.linalg.norm(sys.b))
            for _ in range(20):
                x = rng.standard_normal(n)
                y = monomial_embedding(lift, x)
                action = eval_residual(sys, x).values + sys.b
                assert np.linalg.norm(lift.P @ y - action) <= scale

    def test_mixed_blocks(self):
        base = random_system(4, 2, seed=31)
        cubic = random_system(4, 3, seed=32)
        sys = PolynomialSystem(D=base.D, b=base.b, G=base.G, R=cubic.R)
        lift = build_lifted(sys)
        rng = np.random.default_rng(33)
        for _ in range(20):
            x = rng.standard_normal(4)
            y = monomial_embedding(lift, x)
            action = eval_residual(sys, x).values + sys.b
            assert np.linalg.norm(lift.P @ y - action) <= 1e-11 * (1 + np.linalg.norm(sys.b))

    def test_exact_root_transfer(self):
        root = np.array([0.5, -1.5, 1.0])
        for degree in (2, 3):
            sys = random_system(3, degree, seed=41, planted_root=root)
            lift = build_lifted(sys)
            y = monomial_embedding(lift, root)
            assert np.linalg.norm(lift.P @ y - lift.b) <= 1e-12 * (1 + np.linalg.norm(lift.b))


class TestLiftedSystemConstruction:
    def test_from_matrix_single_block(self):
        lift = LiftedSystem.from_matrix([[0.0, 1.0]], [1.0])
        assert lift.m == 2
        assert lift.blocks[0].degree == 1
        assert lift.n_linear == 2

    def test_rejects_gappy_blocks(self):
        with pytest.raises(DimensionError):
            LiftedSystem(P=np.ones((1, 3)), b=[0.0], blocks=((1, 1, 1), (2, 3, 1)))

    def test_rejects_wrong_b(self):
        with pytest.raises(DimensionError):
            LiftedSystem.from_matrix(np.ones((2, 3)), [1.0])
