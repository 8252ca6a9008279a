"""
Dinàmica d'opinions Friedkin-Johnsen dins d'un tema.
Matriu d'influència W(x), un pas FJ i la matriu de control V(x).
"""
import logging

import numpy as np
import scipy.linalg

from config import CONTROL_TOL, MAX_INNER, DEFAULT_TOL
from errors import DimensionMismatch, SingularSystem, RowStochasticityViolation
from network.influence import InfluenceNetwork, StubbornnessProfile, as_power_vector

log = logging.getLogger(__name__)


def _theta(prof) -> np.ndarray:
    return prof.theta if isinstance(prof, StubbornnessProfile) else np.asarray(prof, dtype=float)


def w_kernel(C: np.ndarray, x: np.ndarray) -> np.ndarray:
    """W = diag(x) + (I - diag(x)) C, sense validar x."""
    W = (1.0 - x)[:, None] * C
    W[np.diag_indices_from(W)] = x
    return W


def build_w(net: InfluenceNetwork, x) -> np.ndarray:
    """
    Matriu d'influència d'un tema.

    Args:
        net: Xarxa validada.
        x: Autoavaluacions (PowerVector o vector del símplex).

    Returns:
        W(x) amb W_ii = x_i i W_ij = (1 - x_i) C_ij.
    """
    x = as_power_vector(x, net.n)
    return w_kernel(net.C, x.x)


def fj_step(y, y0, prof, W) -> np.ndarray:
    """Un pas del model FJ: y+ = Theta W y + (I - Theta) y0."""
    theta = _theta(prof)
    y = np.asarray(y, dtype=float)
    y0 = np.asarray(y0, dtype=float)
    W = np.asarray(W, dtype=float)
    n = theta.size
    for arr in (y, y0):
        if arr.size != n:
            raise DimensionMismatch(n, arr.size)
    if W.shape != (n, n):
        raise DimensionMismatch(n, W.shape[0])
    return theta * (W @ y) + (1.0 - theta) * y0


def v_kernel(C: np.ndarray, theta: np.ndarray, x: np.ndarray) -> np.ndarray:
    """V = (I - Theta W)^-1 (I - Theta) per LU dens."""
    n = theta.size
    A = np.eye(n) - theta[:, None] * w_kernel(C, x)
    try:
        return scipy.linalg.solve(A, np.diag(1.0 - theta))
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise SingularSystem(f"I - Theta W(x) és singular (Assumpció 1 no es compleix): {e}")


def compute_v(net: InfluenceNetwork, prof: StubbornnessProfile, x) -> np.ndarray:
    """
    Matriu de control del tema: y(infinit) = V y(0).

    Returns:
        V estocàstica per files (verificat dins 1e-10).
    """
    x = as_power_vector(x, net.n)
    if prof.n != net.n:
        raise DimensionMismatch(net.n, prof.n)

    V = v_kernel(net.C, prof.theta, x.x)

    drift = float(np.max(np.abs(V.sum(axis=1) - 1.0)))
    if drift > CONTROL_TOL or V.min() < -CONTROL_TOL or V.max() > 1 + CONTROL_TOL:
        raise RowStochasticityViolation(drift)
    return V


def iterate_fj(net: InfluenceNetwork, prof: StubbornnessProfile, x, y0,
               tol: float = DEFAULT_TOL, max_iter: int = MAX_INNER) -> np.ndarray:
    """
    Itera el model FJ fins que el canvi l1 és < tol.

    Returns:
        Opinions finals y(infinit).
    """
    W = build_w(net, x)
    y0 = np.asarray(y0, dtype=float)
    y = y0.copy()
    for _ in range(max_iter):
        y_next = fj_step(y, y0, prof, W)
        if np.abs(y_next - y).sum() < tol:
            return y_next
        y = y_next
    log.warning("FJ no ha convergit en %d iteracions", max_iter)
    return y
