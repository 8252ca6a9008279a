"""
Jacobià del mapa F i mesura de la taxa de convergència geomètrica.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from errors import BoundaryPoint, InsufficientTail, SingularSystem
from network.influence import InfluenceNetwork, StubbornnessProfile, as_power_vector, validate_profile
from dynamics.opinion import w_kernel
from dynamics.power import Trajectory, f_kernel

log = logging.getLogger(__name__)

TAIL_LENGTH = 20
TAIL_FLOOR = 1e-13
RATE_SLACK = 0.05


def jacobian_kernel(C: np.ndarray, theta: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(I - Theta)(I - W^T Theta)^-1 (I - C^T) Theta (I - Theta)^-1 diag(F(x)), sense validar x."""
    n = theta.size
    if np.any(theta >= 1):
        raise SingularSystem("(I - Theta) no és invertible: algun theta_i = 1")
    A = np.eye(n) - w_kernel(C, x).T * theta[None, :]
    fx = f_kernel(C, theta, x)
    rhs = (np.eye(n) - C.T) * (theta / (1.0 - theta) * fx)[None, :]
    try:
        lu = scipy.linalg.lu_factor(A)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise SingularSystem(f"I - W(x)^T Theta és singular: {e}")
    return (1.0 - theta)[:, None] * scipy.linalg.lu_solve(lu, rhs)


def jacobian_f(net: InfluenceNetwork, prof: StubbornnessProfile, x) -> np.ndarray:
    """
    Jacobià de F en un punt interior del símplex.

    Args:
        net: Xarxa validada.
        prof: Perfil que compleix l'Assumpció 2.
        x: Punt amb totes les components > 0.

    Returns:
        Matriu n x n.
    """
    prof = validate_profile(prof, net.n)
    x = as_power_vector(x, net.n)
    if np.any(x.x <= 0):
        raise BoundaryPoint(f"x és a la frontera del símplex: {x.x.tolist()}")
    return jacobian_kernel(net.C, prof.theta, x.x)


def l1_operator_norm(J: np.ndarray) -> float:
    """Norma induïda l1: màxima suma absoluta per columnes."""
    return float(np.abs(J).sum(axis=0).max())


def contraction_constant(prof: StubbornnessProfile) -> float:
    """kappa = 2 theta_max (1 + zeta) / (n (1 - theta_max))."""
    return 2.0 * prof.theta_max * (1.0 + prof.zeta) / (prof.n * (1.0 - prof.theta_max))


@dataclass(frozen=True)
class RateFit:
    """Factor geomètric observat rho = exp(pendent)."""
    rho: float
    slope: float
    points: int
    bound: Optional[float] = None
    within_bound: Optional[bool] = None


def convergence_rate_measurement(trajectory: Trajectory, x_star, prof: Optional[StubbornnessProfile] = None) -> RateFit:
    """
    Ajusta log ||x(s) - x*||_1 per mínims quadrats sobre la cua.

    La cua són els últims 20 iterats amb error > 1e-13. Si es passa el perfil
    i la condició de contracció es compleix, es compara rho amb kappa + 0.05.
    """
    x_star = np.asarray(getattr(x_star, "x", x_star), dtype=float)
    errors = np.array([np.abs(p.x - x_star).sum() for p in trajectory.points])
    steps = np.arange(errors.size)
    keep = errors > TAIL_FLOOR
    steps, errors = steps[keep][-TAIL_LENGTH:], errors[keep][-TAIL_LENGTH:]
    if errors.size < 3:
        raise InsufficientTail(int(errors.size))

    slope = float(np.polyfit(steps, np.log(errors), 1)[0])
    rho = float(np.exp(slope))

    bound = within = None
    if prof is not None:
        kappa = contraction_constant(prof)
        if kappa < 1:
            bound = kappa + RATE_SLACK
            within = rho <= bound
            if not within:
                log.warning("Taxa observada %.4f per sobre de kappa + %.2f = %.4f", rho, RATE_SLACK, bound)
    return RateFit(rho=rho, slope=slope, points=int(errors.size), bound=bound, within_bound=within)
