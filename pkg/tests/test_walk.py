import numpy as np
import pytest

from lqwalk.walk import (
    DOWN,
    LEFT,
    RIGHT,
    SELF,
    UP,
    CoinFamily,
    CoinSpec,
    GridSpec,
    MarkedCluster,
    MarkedOp,
    ResourceCapError,
    WalkError,
    WalkState,
    apply_coin,
    apply_shift,
    coin_row_sum_vector,
    dense_step_matrix,
    diffusion_matrix,
    make_initial_state,
    step,
    success_probability,
)


def unit_state(n, d, x, y, c, value=1.0):
    a = np.zeros((d, n, n))
    a[c, x, y] = value
    return WalkState(GridSpec(n), a)


# --- types ---------------------------------------------------------------

def test_grid_spec():
    g = GridSpec(7)
    assert g.vertex_count == 49
    with pytest.raises(WalkError):
        GridSpec(1)


@pytest.mark.parametrize(
    "coin, dim",
    [(CoinSpec.akr(), 4), (CoinSpec.grover(), 4), (CoinSpec.lackadaisical(0.3), 5)],
)
def test_coin_dim(coin, dim):
    assert coin.coin_dim == dim


def test_coin_spec_rejects_weight_on_4dim_families():
    with pytest.raises(WalkError):
        CoinSpec(CoinFamily.AKR, 0.1)
    with pytest.raises(WalkError):
        CoinSpec(CoinFamily.GROVER, 0.1)
    with pytest.raises(WalkError):
        CoinSpec.lackadaisical(-1e-3)
    with pytest.raises(WalkError):
        CoinSpec(CoinFamily.AKR, marked_op=MarkedOp.NEG_DIFFUSION)


def test_coin_defaults():
    assert CoinSpec.akr().marked_op is MarkedOp.NEG_IDENTITY
    assert CoinSpec.lackadaisical(0.1).marked_op is MarkedOp.NEG_DIFFUSION
    assert CoinSpec.lackadaisical(0.1, "-I").marked_op is MarkedOp.NEG_IDENTITY


def test_marked_cluster_vertices_wrap():
    g = GridSpec(5)
    m = MarkedCluster(3, (4, 3))
    xs, ys = m.vertices(g)
    got = set(zip(xs.tolist(), ys.tolist()))
    want = {((4 + i) % 5, (3 + j) % 5) for i in range(3) for j in range(3)}
    assert got == want and len(got) == m.marked_count == 9


def test_marked_cluster_validation():
    with pytest.raises(WalkError, match="odd"):
        MarkedCluster(4)
    with pytest.raises(WalkError):
        MarkedCluster(5).validate_for(GridSpec(3))
    with pytest.raises(WalkError):
        MarkedCluster(1, (3, 0)).validate_for(GridSpec(3))
    assert MarkedCluster.empty().marked_count == 0


def test_walk_state_shape_check():
    with pytest.raises(WalkError):
        WalkState(GridSpec(3), np.zeros((3, 3, 3)))


# --- make_initial_state --------------------------------------------------

def test_initial_state_akr_n2():
    s = make_initial_state(GridSpec(2), CoinSpec.akr())
    assert s.amplitudes.shape == (4, 2, 2)
    assert np.all(s.amplitudes == 0.25)


def test_initial_state_lackadaisical_zero_weight():
    s = make_initial_state(GridSpec(2), CoinSpec.lackadaisical(0.0))
    assert np.all(s.amplitudes[:4] == 0.25)
    assert np.all(s.amplitudes[SELF] == 0.0)


def test_initial_state_lackadaisical_n10():
    s = make_initial_state(GridSpec(10), CoinSpec.lackadaisical(0.0044))
    # frozen from a 30-digit mpmath evaluation of 1/sqrt(N(4+l)) and sqrt(l)/sqrt(N(4+l))
    np.testing.assert_allclose(s.amplitudes[:4], 0.0499725226667231, rtol=0, atol=1e-15)
    np.testing.assert_allclose(s.amplitudes[SELF], 0.00331480215026102, rtol=0, atol=1e-15)
    assert abs(s.norm_squared() - 1.0) < 1e-12


# --- coin ----------------------------------------------------------------

def test_coin_vector_4dim_matches_grover_diffusion():
    for coin in (CoinSpec.akr(), CoinSpec.grover()):
        np.testing.assert_array_equal(coin_row_sum_vector(coin), [0.5] * 4)
        D = diffusion_matrix(coin)
        expected = 0.5 * np.array([[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]])
        np.testing.assert_allclose(D, expected, atol=1e-15)


def test_coin_vector_lackadaisical_zero():
    coin = CoinSpec.lackadaisical(0.0)
    np.testing.assert_array_equal(coin_row_sum_vector(coin), [0.5, 0.5, 0.5, 0.5, 0.0])
    D = diffusion_matrix(coin)
    np.testing.assert_allclose(D[:4, :4], diffusion_matrix(CoinSpec.akr()), atol=1e-15)
    assert D[SELF, SELF] == -1.0


def test_coin_vector_lackadaisical_four():
    coin = CoinSpec.lackadaisical(4.0)
    # (1,1,1,1,2)/sqrt(8), frozen from mpmath
    np.testing.assert_allclose(
        coin_row_sum_vector(coin),
        [0.353553390593273762, 0.353553390593273762, 0.353553390593273762, 0.353553390593273762, 0.707106781186547524],
        atol=1e-15,
    )
    D = diffusion_matrix(coin)
    np.testing.assert_allclose(D @ D.T, np.eye(5), atol=1e-12)


def test_apply_coin_single_unmarked_vertex():
    s = unit_state(4, 4, 2, 1, UP)
    out = apply_coin(s, CoinSpec.akr(), MarkedCluster(1, (0, 0)))
    np.testing.assert_allclose(out.amplitudes[:, 2, 1], [-0.5, 0.5, 0.5, 0.5], atol=1e-15)
    rest = out.amplitudes.copy()
    rest[:, 2, 1] = 0
    assert np.all(rest == 0)


def test_apply_coin_marked_negation():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(4, 5, 5))
    s = WalkState(GridSpec(5), a / np.linalg.norm(a))
    m = MarkedCluster(3, (1, 1))
    out = apply_coin(s, CoinSpec.akr(), m)
    xs, ys = m.vertices(s.grid)
    np.testing.assert_array_equal(out.amplitudes[:, xs, ys], -s.amplitudes[:, xs, ys])

    a5 = rng.normal(size=(5, 5, 5))
    s5 = WalkState(GridSpec(5), a5 / np.linalg.norm(a5))
    out = apply_coin(s5, CoinSpec.lackadaisical(0.2, "-I"), m)
    np.testing.assert_array_equal(out.amplitudes[:, xs, ys], -s5.amplitudes[:, xs, ys])


def test_apply_coin_lackadaisical_default_marks_with_minus_diffusion():
    rng = np.random.default_rng(4)
    a = rng.normal(size=(5, 4, 4))
    s = WalkState(GridSpec(4), a / np.linalg.norm(a))
    coin = CoinSpec.lackadaisical(0.3)
    out = apply_coin(s, coin, MarkedCluster(1, (2, 3)))
    D = diffusion_matrix(coin)
    np.testing.assert_allclose(out.amplitudes[:, 2, 3], -D @ s.amplitudes[:, 2, 3], atol=1e-15)
    np.testing.assert_allclose(out.amplitudes[:, 0, 0], D @ s.amplitudes[:, 0, 0], atol=1e-15)


@pytest.mark.parametrize("coin", [CoinSpec.akr(), CoinSpec.grover(), CoinSpec.lackadaisical(0.7)])
def test_apply_coin_fixes_uniform_state_without_marks(coin):
    s = make_initial_state(GridSpec(4), coin)
    out = apply_coin(s, coin, MarkedCluster.empty())
    np.testing.assert_allclose(out.amplitudes, s.amplitudes, atol=1e-15)


def test_apply_coin_dimension_mismatch():
    s = make_initial_state(GridSpec(3), CoinSpec.akr())
    with pytest.raises(WalkError):
        apply_coin(s, CoinSpec.lackadaisical(0.1), MarkedCluster(1))


# --- shift ---------------------------------------------------------------

def test_shift_right_moves_to_left_of_neighbour():
    out = apply_shift(unit_state(2, 4, 0, 0, RIGHT))
    assert out.amplitude(1, 0, LEFT) == 1.0
    assert out.norm_squared() == 1.0


@pytest.mark.parametrize(
    "c, dest",
    [
        (UP, (3, 1, DOWN)),
        (DOWN, (3, 3, UP)),
        (LEFT, (2, 2, RIGHT)),
        (RIGHT, (4, 2, LEFT)),
        (SELF, (3, 2, SELF)),
    ],
)
def test_shift_directions(c, dest):
    out = apply_shift(unit_state(5, 5, 3, 2, c))
    assert out.amplitude(*dest) == 1.0


def test_shift_wraps():
    out = apply_shift(unit_state(4, 4, 0, 0, UP))
    assert out.amplitude(0, 3, DOWN) == 1.0
    out = apply_shift(unit_state(4, 4, 0, 0, LEFT))
    assert out.amplitude(3, 0, RIGHT) == 1.0


def test_shift_leaves_self_amplitudes():
    a = np.zeros((5, 3, 3))
    a[SELF] = 1 / 3
    s = WalkState(GridSpec(3), a)
    np.testing.assert_array_equal(apply_shift(s).amplitudes, a)


# --- step / success probability ------------------------------------------

@pytest.mark.parametrize("coin", [CoinSpec.akr(), CoinSpec.grover(), CoinSpec.lackadaisical(0.05)])
def test_uniform_state_is_stationary_without_marks(coin):
    s0 = make_initial_state(GridSpec(6), coin)
    s = s0
    for _ in range(20):
        s = step(s, coin, MarkedCluster.empty())
    np.testing.assert_allclose(s.amplitudes, s0.amplitudes, atol=1e-14)


def test_step_matches_dense_oracle_akr():
    g, coin, m = GridSpec(4), CoinSpec.akr(), MarkedCluster(1, (0, 0))
    U = dense_step_matrix(g, coin, m)
    s = make_initial_state(g, coin)
    v = s.amplitudes.ravel().copy()
    for _ in range(10):
        s = step(s, coin, m)
        v = U @ v
    np.testing.assert_allclose(s.amplitudes.ravel(), v, atol=1e-10)


def test_success_probability_examples():
    g = GridSpec(10)
    m = MarkedCluster(3)
    s = make_initial_state(g, CoinSpec.akr())
    assert success_probability(s, m) == pytest.approx(0.09, abs=1e-15)
    assert success_probability(unit_state(10, 4, 1, 2, LEFT), m) == 1.0
    for l in (0.0, 0.01, 3.0):
        s = make_initial_state(g, CoinSpec.lackadaisical(l))
        assert success_probability(s, m) == pytest.approx(9 / 100, abs=1e-14)


# --- dense oracle --------------------------------------------------------

def test_dense_matrix_n2_akr_unmarked():
    g, coin = GridSpec(2), CoinSpec.akr()
    U = dense_step_matrix(g, coin, MarkedCluster.empty())
    assert U.shape == (16, 16)
    np.testing.assert_allclose(U @ U.T, np.eye(16), atol=1e-12)
    u = make_initial_state(g, coin).amplitudes.ravel()
    np.testing.assert_allclose(U @ u, u, atol=1e-14)


def test_dense_matrix_powers_lackadaisical():
    g, coin, m = GridSpec(4), CoinSpec.lackadaisical(0.05), MarkedCluster(1, (1, 1))
    U = dense_step_matrix(g, coin, m)
    np.testing.assert_allclose(U @ U.T, np.eye(80), atol=1e-10)
    s0 = make_initial_state(g, coin)
    s = s0
    for t in range(1, 51):
        s = step(s, coin, m)
        np.testing.assert_allclose(
            s.amplitudes.ravel(), np.linalg.matrix_power(U, t) @ s0.amplitudes.ravel(), atol=1e-10
        )


def test_dense_matrix_cap():
    with pytest.raises(ResourceCapError):
        dense_step_matrix(GridSpec(23), CoinSpec.akr(), MarkedCluster(1))
    with pytest.raises(ResourceCapError):
        dense_step_matrix(GridSpec(4), CoinSpec.akr(), MarkedCluster(1), cap=63)
