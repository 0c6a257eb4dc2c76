"""Pure-NumPy implementation of the hot numerical kernels.

Matches qdcorr._backend._core operation for operation; see the package
docstring of qdcorr._backend for the interface contract.
"""

import numpy as np

NAME = "python"

_P_FLOOR = 1e-14  # measurement branches below this probability contribute 0


def rk4_lindblad(rho, mmat, jumps, h, nsub):
    """Advance `nsub` fixed RK4 steps of drho/dt = M rho + rho M^dag + sum_k A_k rho A_k^dag.

    `jumps` is a (k, n, n) complex array (k may be 0).  Returns the new
    density matrix; the input is not modified.
    """
    md = mmat.conj().T
    jd = jumps.conj().transpose(0, 2, 1)

    def rhs(r):
        out = mmat @ r + r @ md
        for a, ad in zip(jumps, jd):
            out = out + a @ r @ ad
        return out

    r = rho
    for _ in range(nsub):
        k1 = rhs(r)
        k2 = rhs(r + (0.5 * h) * k1)
        k3 = rhs(r + (0.5 * h) * k2)
        k4 = rhs(r + h * k3)
        r = r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return r


def _binary_entropy(x):
    x = np.clip(x, 0.0, 1.0)
    out = np.zeros_like(x)
    inside = (x > 0.0) & (x < 1.0)
    xi = x[inside]
    out[inside] = -xi * np.log2(xi) - (1.0 - xi) * np.log2(1.0 - xi)
    return out


def _objective_array(rB, rA, S, th, ph):
    """Measured conditional entropy for arrays of angles (broadcast shapes)."""
    n = np.stack(
        [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1
    )
    sn = n @ S.T
    dot = n @ rB
    total = np.zeros(np.shape(dot))
    for s in (1.0, -1.0):
        p = 0.5 * (1.0 + s * dot)
        u = rA.reshape((1,) * dot.ndim + (3,)) + s * sn
        unorm = np.sqrt((u * u).sum(axis=-1))
        lam = np.full(np.shape(dot), 0.5)
        good = p > _P_FLOOR
        lam[good] = 0.5 * (1.0 + unorm[good] / (2.0 * p[good]))
        contrib = np.where(good, p * _binary_entropy(lam), 0.0)
        total = total + contrib
    return total


def discord_objective(rB, rA, S, theta, phi):
    """Conditional entropy after measuring along Bloch direction (theta, phi)."""
    return float(
        _objective_array(rB, rA, S, np.asarray([theta]), np.asarray([phi]))[0]
    )


def discord_scan(rB, rA, S, thetas, phis):
    """Grid minimum of the measured conditional entropy.

    Returns (value, theta, phi) at the first grid minimum in
    lexicographic (theta, phi) index order.
    """
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    vals = _objective_array(rB, rA, S, th, ph)
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    return float(vals[i, j]), float(thetas[i]), float(phis[j])
