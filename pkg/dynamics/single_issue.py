"""
Model d'un sol tema: la matriu de control V i el poder social x evolucionen
a cada pas d'opinió.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config import CONTROL_TOL, DEFAULT_TOL, MAX_ISSUES
from errors import DimensionMismatch
from network.influence import InfluenceNetwork, StubbornnessProfile, PowerVector, as_power_vector
from dynamics.opinion import w_kernel
from dynamics.power import Trajectory, _check_run

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SingleIssueState:
    """Parell (V, x) al pas k."""
    V: np.ndarray
    x: PowerVector
    k: int = 0
    renormalizations: int = 0


def initial_state(n: int, x0, V0: Optional[np.ndarray] = None) -> SingleIssueState:
    """Estat inicial amb V(0) = I (o V0 injectada) i x(0) lliure."""
    V = np.eye(n) if V0 is None else np.array(V0, dtype=float)
    if V.shape != (n, n):
        raise DimensionMismatch(n, V.shape[0])
    return SingleIssueState(V=V, x=as_power_vector(x0, n))


def single_issue_step(state: SingleIssueState, net: InfluenceNetwork,
                      prof: StubbornnessProfile) -> SingleIssueState:
    """
    Un pas: V+ = Theta W(x) V + I - Theta; x+ = (V+)^T 1/n.

    Si la deriva de les files de V+ supera 1e-10 es renormalitzen i es compta.
    """
    n = net.n
    if state.V.shape != (n, n) or state.x.n != n or prof.n != n:
        raise DimensionMismatch(n, state.x.n)

    theta = prof.theta
    V_next = theta[:, None] * (w_kernel(net.C, state.x.x) @ state.V)
    V_next[np.diag_indices(n)] += 1.0 - theta

    renorm = state.renormalizations
    row_sums = V_next.sum(axis=1)
    if np.max(np.abs(row_sums - 1.0)) > CONTROL_TOL:
        V_next = V_next / row_sums[:, None]
        renorm += 1
        log.warning("Files de V renormalitzades al pas %d", state.k + 1)

    x_next = as_power_vector(V_next.sum(axis=0) / n)
    return SingleIssueState(V=V_next, x=x_next, k=state.k + 1, renormalizations=renorm)


def iterate_single_issue(
    net: InfluenceNetwork,
    prof: StubbornnessProfile,
    x0,
    max_steps: int = MAX_ISSUES,
    tol: float = DEFAULT_TOL,
    V0: Optional[np.ndarray] = None,
) -> Trajectory:
    """
    Itera el model d'un sol tema des de V(0) = I.

    x0 només entra a través de W(x(0)) al pas 0. S'atura quan el canvi l1 de x
    i el canvi màxim per files de V són tots dos < tol.

    Args:
        V0: Matriu de control inicial alternativa (per provar estats estacionaris).
    """
    _check_run(net, prof, max_steps, tol)
    state = initial_state(net.n, x0, V0)

    traj = Trajectory(points=[state.x], model="single")
    for _ in range(max_steps):
        nxt = single_issue_step(state, net, prof)
        residual = float(np.abs(nxt.x.x - state.x.x).sum())
        v_change = float(np.abs(nxt.V - state.V).sum(axis=1).max())
        traj.points.append(nxt.x)
        traj.final_residual = residual
        state = nxt
        if residual < tol and v_change < tol:
            traj.converged = True
            break

    traj.renormalizations = state.renormalizations
    traj.final_control = state.V
    if not traj.converged:
        log.warning("El model d'un sol tema no ha convergit en %d passos (residu %.3e)",
                    max_steps, traj.final_residual)
    return traj
