"""
Evolució del poder social sobre una seqüència de temes.
Mapa F, iteració de punt fix i procés distribuït de poder percebut.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import scipy.linalg

from config import DEFAULT_TOL, MAX_ISSUES, MAX_INNER, DAMPING_FACTOR, OSCILLATION_WINDOW
from errors import DimensionMismatch, SingularSystem, OutOfRange
from network.influence import (
    InfluenceNetwork, StubbornnessProfile, PowerVector,
    as_power_vector, validate_profile,
)
from dynamics.opinion import w_kernel

log = logging.getLogger(__name__)


@dataclass
class Trajectory:
    """Seqüència de PowerVector (un per tema s o pas k)."""
    points: List[PowerVector] = field(default_factory=list)
    converged: bool = False
    final_residual: float = float("inf")
    model: str = "issues"
    damped: bool = False
    renormalizations: int = 0
    final_control: Optional[np.ndarray] = None  # V al final (model d'un sol tema)

    @property
    def steps(self) -> int:
        return max(len(self.points) - 1, 0)

    @property
    def final(self) -> PowerVector:
        return self.points[-1]

    def as_array(self) -> np.ndarray:
        return np.vstack([p.x for p in self.points])


def f_kernel(C: np.ndarray, theta: np.ndarray, x: np.ndarray) -> np.ndarray:
    """
    F(x) = (I - Theta)(I - W(x)^T Theta)^-1 1/n sense validar x.

    Una sola resolució LU del sistema transposat, mai la inversa explícita.
    """
    n = theta.size
    A = np.eye(n) - w_kernel(C, x).T * theta[None, :]
    try:
        z = scipy.linalg.solve(A, np.full(n, 1.0 / n))
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise SingularSystem(f"I - W(x)^T Theta és singular: {e}")
    return (1.0 - theta) * z


def f_map(net: InfluenceNetwork, prof: StubbornnessProfile, x) -> PowerVector:
    """
    Mapa de poder social entre temes.

    Args:
        net: Xarxa validada.
        prof: Perfil de susceptibilitats (els casos degenerats es permeten aquí).
        x: Poder social del tema actual.

    Returns:
        F(x) sobre el símplex (renormalitzat si la deriva supera 1e-14).
    """
    x = as_power_vector(x, net.n)
    if prof.n != net.n:
        raise DimensionMismatch(net.n, prof.n)
    return as_power_vector(f_kernel(net.C, prof.theta, x.x))


def _check_run(net, prof, max_iter, tol):
    if prof.n != net.n:
        raise DimensionMismatch(net.n, prof.n)
    validate_profile(prof)
    if max_iter < 1:
        raise OutOfRange(f"max_issues ha de ser >= 1 (rebut {max_iter})")
    if tol <= 0:
        raise OutOfRange(f"tol ha de ser > 0 (rebut {tol})")


def iterate_issue_sequence(
    net: InfluenceNetwork,
    prof: StubbornnessProfile,
    x0,
    max_issues: int = MAX_ISSUES,
    tol: float = DEFAULT_TOL,
    allow_damping: bool = False,
) -> Trajectory:
    """
    Itera x(s+1) = F(x(s)) fins que la distància l1 entre iterats és < tol.

    Args:
        net: Xarxa validada.
        prof: Perfil que compleix l'Assumpció 2.
        x0: Poder social inicial.
        max_issues: Nombre màxim de temes.
        tol: Tolerància l1.
        allow_damping: Activa l'esmorteïment (factor 0.5) si el residu no decreix
            durant 50 passos consecutius.

    Returns:
        Trajectory amb tots els iterats.
    """
    _check_run(net, prof, max_issues, tol)
    x = as_power_vector(x0, net.n)

    traj = Trajectory(points=[x], model="issues")
    damping = 1.0
    stalled = 0
    prev_residual = float("inf")

    for _ in range(max_issues):
        fx = f_kernel(net.C, prof.theta, x.x)
        if damping < 1.0:
            fx = damping * fx + (1.0 - damping) * x.x
        x_next = as_power_vector(fx)
        if x_next.renormalized:
            traj.renormalizations += 1

        residual = float(np.abs(x_next.x - x.x).sum())
        traj.points.append(x_next)
        traj.final_residual = residual
        x = x_next

        if residual < tol:
            traj.converged = True
            break

        stalled = stalled + 1 if residual >= prev_residual else 0
        prev_residual = residual
        if allow_damping and damping == 1.0 and stalled >= OSCILLATION_WINDOW:
            log.warning("Oscil·lació detectada després de %d temes; s'activa l'esmorteïment %.1f",
                        traj.steps, DAMPING_FACTOR)
            damping = DAMPING_FACTOR
            traj.damped = True

    if not traj.converged:
        log.warning("La seqüència de temes no ha convergit en %d passos (residu %.3e)",
                    max_issues, traj.final_residual)
    return traj


def perceived_power_process(
    net: InfluenceNetwork,
    prof: StubbornnessProfile,
    x,
    p0,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_INNER,
) -> np.ndarray:
    """
    Procés distribuït de percepció del poder social durant un tema.

    Cada individu només usa les susceptibilitats i els pesos de qui l'escolta:
    p+ = W~ p + (I - Theta) 1/n, amb W~ = (I - Theta) W(x)^T Theta (I - Theta)^-1.

    Returns:
        Límit de p (coincideix amb F(x)); no es força sobre el símplex.
    """
    theta = prof.theta
    if np.any(theta >= 1):
        raise SingularSystem("(I - Theta) no és invertible: algun theta_i = 1")
    x = as_power_vector(x, net.n)
    p = np.asarray(p0, dtype=float).copy()
    if p.size != net.n:
        raise DimensionMismatch(net.n, p.size)

    W_tilde = (1.0 - theta)[:, None] * w_kernel(net.C, x.x).T * (theta / (1.0 - theta))[None, :]
    drive = (1.0 - theta) / net.n

    for _ in range(max_iter):
        p_next = W_tilde @ p + drive
        change = np.abs(p_next - p).sum()
        p = p_next
        if change < tol:
            break
    else:
        log.warning("El poder percebut no ha convergit en %d iteracions", max_iter)

    gap = float(np.abs(p - f_kernel(net.C, theta, x.x)).sum())
    if gap > 10 * tol:
        log.warning("Poder percebut a %.3e de F(x) (tol %.1e)", gap, tol)
    return p


def iterate_perceived_sequence(
    net: InfluenceNetwork,
    prof: StubbornnessProfile,
    x0,
    max_issues: int = MAX_ISSUES,
    tol: float = DEFAULT_TOL,
) -> Trajectory:
    """
    Seqüència de temes on cada x(s+1) s'obté amb el procés distribuït de poder
    percebut, començant des de p(0) = x(s).
    """
    _check_run(net, prof, max_issues, tol)
    x = as_power_vector(x0, net.n)
    traj = Trajectory(points=[x], model="perceived")

    for _ in range(max_issues):
        p = np.clip(perceived_power_process(net, prof, x, x.x, tol=tol * 1e-2), 0.0, None)
        x_next = as_power_vector(p / p.sum())
        residual = float(np.abs(x_next.x - x.x).sum())
        traj.points.append(x_next)
        traj.final_residual = residual
        x = x_next
        if residual < tol:
            traj.converged = True
            break

    if not traj.converged:
        log.warning("La seqüència percebuda no ha convergit en %d passos (residu %.3e)",
                    max_issues, traj.final_residual)
    return traj
