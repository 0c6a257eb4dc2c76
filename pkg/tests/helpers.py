"""Independent numerical oracles for the test suite.

Everything here is implemented directly from defining formulas (brute
force where feasible) and deliberately shares no code with the package,
so agreement is a genuine cross-check rather than a tautology.
"""

import numpy as np

# ---------------------------------------------------------------------------
# random state generators


def random_state_vector(rng, dim):
    """Haar-ish random pure state of the given dimension."""
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def random_density_matrix(rng, dim, rank=None):
    """Random mixed state: a weighted mixture of random pure states."""
    if rank is None:
        rank = dim
    weights = rng.dirichlet(np.ones(rank))
    rho = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        psi = random_state_vector(rng, dim)
        rho += w * np.outer(psi, psi.conj())
    return rho


def random_product_density(rng):
    """Random two-qubit product state rho_A (x) rho_B."""
    return np.kron(
        random_density_matrix(rng, 2), random_density_matrix(rng, 2)
    )


def random_x_state(rng):
    """Random valid two-qubit X-state density matrix.

    Nonzero entries only on the diagonal and anti-diagonal; positivity
    holds because each 2x2 block ((rho00, rho03), (rho30, rho33)) and
    ((rho11, rho12), (rho21, rho22)) is kept positive semidefinite.
    """
    p = rng.dirichlet(np.ones(4))
    corner = (
        rng.uniform(0.0, 1.0)
        * np.sqrt(p[0] * p[3])
        * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    )
    middle = (
        rng.uniform(0.0, 1.0)
        * np.sqrt(p[1] * p[2])
        * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    )
    rho = np.diag(p).astype(complex)
    rho[0, 3], rho[3, 0] = corner, np.conj(corner)
    rho[1, 2], rho[2, 1] = middle, np.conj(middle)
    return rho


# ---------------------------------------------------------------------------
# closed forms


def x_state_concurrence(rho):
    """Closed-form concurrence of a two-qubit X-state.

    C = 2 max(0, |rho03| - sqrt(rho11 rho22), |rho12| - sqrt(rho00 rho33)).
    """
    a = abs(rho[0, 3]) - np.sqrt(rho[1, 1].real * rho[2, 2].real)
    b = abs(rho[1, 2]) - np.sqrt(rho[0, 0].real * rho[3, 3].real)
    return float(2.0 * max(0.0, a, b))


def entropy_bits(rho):
    """Von Neumann entropy in bits, directly from eigenvalues."""
    eigs = np.linalg.eigvalsh(rho).real
    eigs = eigs[eigs > 1e-300]
    return float(-(eigs * np.log2(eigs)).sum())


def marginals(rho):
    """(rho_A, rho_B) of a two-qubit density matrix."""
    tensor = rho.reshape(2, 2, 2, 2)
    rho_a = np.einsum("akbk->ab", tensor)
    rho_b = np.einsum("akal->kl", tensor)
    return rho_a, rho_b


def mutual_information_bits(rho):
    rho_a, rho_b = marginals(rho)
    return entropy_bits(rho_a) + entropy_bits(rho_b) - entropy_bits(rho)


# ---------------------------------------------------------------------------
# brute-force discord


def _branch_entropy(r00, r01, r11):
    """sum over two eigenvalues of -lam log2(lam / p) for the 2x2
    Hermitian matrices ((r00, r01), (r01*, r11)), elementwise."""
    p = r00.real + r11.real
    det = r00.real * r11.real - (r01.real**2 + r01.imag**2)
    disc = np.sqrt(np.clip(p * p - 4.0 * det, 0.0, None))
    contrib = np.zeros_like(p)
    mask = p > 1e-14
    for lam in ((p + disc) / 2.0, (p - disc) / 2.0):
        lam = np.clip(lam, 0.0, None)
        inner = mask & (lam > 1e-300)
        contrib[inner] -= lam[inner] * np.log2(lam[inner] / p[inner])
    return contrib


def dense_discord(rho, n_theta=2001, n_phi=4001, theta_block=256):
    """Brute-force quantum discord via a dense measurement-angle grid.

    Measures the second qubit with projectors onto
    (cos(t/2), sin(t/2) e^{i f}) and its orthogonal complement, scanning
    the full (theta, phi) grid, and returns (discord, mutual_information,
    classical_correlations).

    The post-measurement (unnormalized) state of the first qubit is
    rho~_ab = sum_kl rho[(a k), (b l)] P[l, k]; with the rank-1 projector
    P[i, j] = v_i v_j* this unrolls into four scalar-times-array terms
    per matrix element, evaluated over theta-blocks of the grid.
    """
    rho_a, _ = marginals(rho)
    s_a = entropy_bits(rho_a)
    mi = mutual_information_bits(rho)
    g = rho.reshape(2, 2, 2, 2)

    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi)
    phase = np.exp(1j * phis)[None, :]
    best = np.inf
    for start in range(0, n_theta, theta_block):
        th = thetas[start : start + theta_block]
        c2 = (np.cos(th / 2.0) ** 2)[:, None]
        s2 = (np.sin(th / 2.0) ** 2)[:, None]
        cs = (np.cos(th / 2.0) * np.sin(th / 2.0))[:, None]
        x = cs * phase          # cs e^{+i phi} = P[1, 0]
        xc = x.conj()           # cs e^{-i phi} = P[0, 1]
        # rho~_ab = g[a,0,b,0] c^2 + g[a,1,b,0] xc + g[a,0,b,1] x
        #           + g[a,1,b,1] s^2
        r00 = g[0, 0, 0, 0] * c2 + g[0, 1, 0, 0] * xc + g[0, 0, 0, 1] * x \
            + g[0, 1, 0, 1] * s2
        r11 = g[1, 0, 1, 0] * c2 + g[1, 1, 1, 0] * xc + g[1, 0, 1, 1] * x \
            + g[1, 1, 1, 1] * s2
        r01 = g[0, 0, 1, 0] * c2 + g[0, 1, 1, 0] * xc + g[0, 0, 1, 1] * x \
            + g[0, 1, 1, 1] * s2
        cond = _branch_entropy(r00, r01, r11)
        # complementary projector: rho~(minus) = rho_A - rho~(plus)
        cond += _branch_entropy(
            rho_a[0, 0] - r00, rho_a[0, 1] - r01, rho_a[1, 1] - r11
        )
        block_min = float(cond.min())
        if block_min < best:
            best = block_min
    classical = s_a - best
    return mi - classical, mi, classical


# ---------------------------------------------------------------------------
# signal utilities


def find_peaks(values, min_height=0.0):
    """Indices of strict interior local maxima with value > min_height."""
    values = np.asarray(values, dtype=float)
    idx = []
    for i in range(1, values.size - 1):
        if (
            values[i] > values[i - 1]
            and values[i] > values[i + 1]
            and values[i] > min_height
        ):
            idx.append(i)
    return idx
