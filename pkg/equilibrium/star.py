"""
Equilibris en forma tancada per a topologies estrella.

El centre l és el node incident a totes les arestes de G(C). Les fulles
només escolten el centre (C_il = 1).
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from config import SMALL_THETA
from errors import NotStar, CenterNotFullyStubborn, CenterFullyStubborn, PreconditionCliNonzero
from network.influence import InfluenceNetwork, StubbornnessProfile, PowerVector, as_power_vector, validate_profile
from network.structure import analyze_structure

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StarQuantities:
    """Quantitats auxiliars d'una estrella avaluades en un punt x."""
    center: int
    beta: np.ndarray  # theta_i (1 - x_i)
    gamma: np.ndarray  # 1 - theta_i x_i
    alpha: float
    xi: float


def star_quantities(net: InfluenceNetwork, prof: StubbornnessProfile, x, center: int) -> StarQuantities:
    x = as_power_vector(x, net.n).x
    theta = prof.theta
    beta = theta * (1.0 - x)
    gamma = 1.0 - theta * x
    leaves_p = [j for j in prof.V_p if j != center]
    ratio = beta[leaves_p] / gamma[leaves_p]
    alpha = float(gamma[center] - beta[center] * np.sum(net.C[center, leaves_p] * ratio))
    xi = float(1.0 + ratio.sum())
    return StarQuantities(center=center, beta=beta, gamma=gamma, alpha=alpha, xi=xi)


def leaf_closed_form(n: int, theta: float, xi: float = 1.0) -> float:
    """
    Arrel petita de n theta x^2 - n x + (1 - theta) xi = 0.

    Per a theta >= 1e-6 s'avalua en la forma racionalitzada
    2 (1 - theta) xi / (n + sqrt(n^2 - 4 n theta (1 - theta) xi)),
    idèntica a (n - sqrt(...)) / (2 n theta) però sense cancel·lació.
    Per sota s'usa la sèrie de segon ordre en theta.
    """
    if theta < SMALL_THETA:
        a = (1.0 - theta) * xi / n
        return a + theta * a * a + 2.0 * theta * theta * a ** 3
    disc = n * n - 4.0 * n * theta * (1.0 - theta) * xi
    if disc < 0:
        log.warning("Discriminant negatiu (%.3e) a la forma tancada; es trunca a 0", disc)
        disc = 0.0
    return 2.0 * (1.0 - theta) * xi / (n + np.sqrt(disc))


def _require_star(net: InfluenceNetwork) -> Tuple[int, ...]:
    structure = analyze_structure(net)
    if not structure.is_star:
        raise NotStar("G(C) no és una estrella")
    return structure.star_centers


def pick_fully_stubborn_center(net: InfluenceNetwork, prof: StubbornnessProfile) -> int:
    centers = _require_star(net)
    for c in centers:
        if prof.theta[c] == 0:
            return c
    raise CenterNotFullyStubborn(centers[0] + 1)


def pick_partially_stubborn_center(net: InfluenceNetwork, prof: StubbornnessProfile) -> int:
    """
    Centre parcialment tossut que compleix C_li = 0 per a les fulles parcialment
    tossudes; si cap el compleix aixeca PreconditionCliNonzero amb el primer.
    """
    centers = _require_star(net)
    partial = [c for c in centers if prof.theta[c] > 0]
    if not partial:
        raise CenterFullyStubborn(centers[0] + 1)
    for c in partial:
        if _nonzero_partial_leaf(net, prof, c) is None:
            return c
    c = partial[0]
    raise PreconditionCliNonzero(c + 1, _nonzero_partial_leaf(net, prof, c) + 1)


def _nonzero_partial_leaf(net, prof, center) -> Optional[int]:
    for i in prof.V_p:
        if i != center and net.C[center, i] != 0:
            return i
    return None


def star_fully_stubborn_solution(net: InfluenceNetwork, prof: StubbornnessProfile) -> Tuple[PowerVector, int]:
    """
    Equilibri tancat amb centre totalment tossut.

    Fulles totalment tossudes a 1/n, fulles parcialment tossudes a l'arrel
    petita amb xi = 1, i el centre recull la resta.
    """
    prof = validate_profile(prof, net.n)
    l = pick_fully_stubborn_center(net, prof)
    n = net.n
    theta = prof.theta

    x = np.full(n, 1.0 / n)
    for i in prof.V_p:
        x[i] = leaf_closed_form(n, theta[i])
    partial = list(prof.V_p)
    x[l] = 1.0 / n + np.sum(theta[partial] * (1.0 - x[partial]) / (1.0 - theta[partial] * x[partial])) / n
    return as_power_vector(x, n), l


def star_partially_stubborn_solution(net: InfluenceNetwork, prof: StubbornnessProfile) -> Tuple[PowerVector, int]:
    """
    Equilibri tancat amb centre parcialment tossut i C_li = 0 per a tota fulla
    parcialment tossuda.

    Primer es resolen les fulles parcialment tossudes (independents), després
    xi* = n - r - n * suma d'aquestes, el centre amb xi* i finalment les fulles
    totalment tossudes: x_i = 1/n + (xi*/n - x_l) C_li.
    """
    prof = validate_profile(prof, net.n)
    l = pick_partially_stubborn_center(net, prof)
    n = net.n
    theta = prof.theta

    x = np.zeros(n)
    leaves_p = [i for i in prof.V_p if i != l]
    for i in leaves_p:
        x[i] = leaf_closed_form(n, theta[i])
    xi_star = n - prof.r - n * x[leaves_p].sum()
    x[l] = leaf_closed_form(n, theta[l], xi_star)
    for i in prof.V_f:
        x[i] = 1.0 / n + (xi_star / n - x[l]) * net.C[l, i]
    return as_power_vector(x, n), l


def trapping_region(net: InfluenceNetwork, prof: StubbornnessProfile) -> Dict[int, Tuple[float, float]]:
    """
    Interval [(1 - theta_i)/n, a_i] per a cada i de V_p, amb
    a_i = (n - r)/n - suma_{j in V_p \\ {i}} (1 - theta_j)/n.
    """
    n = net.n
    theta = prof.theta
    total = float(np.sum(1.0 - theta[list(prof.V_p)]))
    region = {}
    for i in prof.V_p:
        upper = (n - prof.r) / n - (total - (1.0 - theta[i])) / n
        region[i] = ((1.0 - theta[i]) / n, upper)
    return region


def in_trapping_region(x, region: Dict[int, Tuple[float, float]], tol: float = 1e-12) -> bool:
    x = np.asarray(getattr(x, "x", x), dtype=float)
    return all(low - tol <= x[i] <= high + tol for i, (low, high) in region.items())
