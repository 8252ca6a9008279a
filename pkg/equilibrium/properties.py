"""
Propietats estructurals del poder social d'equilibri.
Test de democràcia, equacions per blocs i comprovació de fites i ordenacions.
"""
import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import List

import numpy as np

from config import SOLVED_RESIDUAL
from errors import StaleEquilibrium
from network.influence import InfluenceNetwork, StubbornnessProfile, as_power_vector, uniform_power
from network.structure import analyze_structure
from dynamics.power import f_kernel

log = logging.getLogger(__name__)

DEMOCRACY_TOL = 1e-10
EQUALITY_TOL = 1e-9  # igualtats x_i = 1/n calculades


@dataclass(frozen=True)
class DemocracyCheck:
    """Resultat del test de democràcia (1/n és equilibri)."""
    democratic: bool
    eigen_residual: float  # ||w^T C - w^T||_1 / ||w||_1
    map_residual: float  # ||F(1/n) - 1/n||_1


@dataclass(frozen=True)
class PropertyResult:
    name: str
    holds: bool
    detail: str = ""


@dataclass
class PropertyReport:
    """Llista d'afirmacions avaluades sobre x*."""
    results: List[PropertyResult] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.results)

    @property
    def failures(self) -> List[PropertyResult]:
        return [r for r in self.results if not r.holds]

    def add(self, name: str, holds: bool, detail: str = ""):
        self.results.append(PropertyResult(name, bool(holds), detail))

    def to_dict(self) -> dict:
        return {
            "all_hold": self.all_hold,
            "checks": [{"name": r.name, "holds": r.holds, "detail": r.detail} for r in self.results],
        }


def fixed_point_residual(net: InfluenceNetwork, prof: StubbornnessProfile, x) -> float:
    """||F(x) - x||_1."""
    x = np.asarray(getattr(x, "x", x), dtype=float)
    return float(np.abs(f_kernel(net.C, prof.theta, x) - x).sum())


def democracy_check(net: InfluenceNetwork, prof: StubbornnessProfile) -> DemocracyCheck:
    """
    1/n és equilibri si i només si w = Theta (I - Theta)^-1 1 és vector propi
    esquerre de C amb valor propi 1. Es calculen les dues formes.
    """
    theta = prof.theta
    w = theta / (1.0 - theta)
    eigen = float(np.abs(w @ net.C - w).sum() / np.abs(w).sum())
    u = uniform_power(net.n).x
    mapped = float(np.abs(f_kernel(net.C, theta, u) - u).sum())

    by_eigen = eigen < DEMOCRACY_TOL
    by_map = mapped < DEMOCRACY_TOL
    if by_eigen != by_map:
        log.warning("Test de democràcia inconsistent: vector propi %.3e, mapa %.3e", eigen, mapped)
    return DemocracyCheck(democratic=by_eigen, eigen_residual=eigen, map_residual=mapped)


def block_equation_residual(net: InfluenceNetwork, prof: StubbornnessProfile, x_star) -> float:
    """
    Residu màxim (l1) de les equacions per blocs d'equilibri.

    Bloc totalment tossut (relació afí):
        x_f = 1/n + C_pf^T D (I - diag(x_p)) x_p
    Bloc parcialment tossut (relació quadràtica):
        (I - C_p^T Theta_p)(I - Theta_p)^-1 x_p = 1/n + (I - C_p^T) D diag(x_p) x_p
    amb D = Theta_p (I - Theta_p)^-1.
    """
    x = as_power_vector(x_star, net.n).x
    n = net.n
    f = list(prof.V_f)
    p = list(prof.V_p)
    theta_p = prof.theta[p]
    D = theta_p / (1.0 - theta_p)
    x_p = x[p]

    res_f = 0.0
    if f:
        C_pf = net.C[np.ix_(p, f)]
        predicted = 1.0 / n + C_pf.T @ (D * (1.0 - x_p) * x_p)
        res_f = float(np.abs(x[f] - predicted).sum())

    C_p = net.C[np.ix_(p, p)]
    lhs = x_p / (1.0 - theta_p) - C_p.T @ (D * x_p)
    rhs = 1.0 / n + (D * x_p * x_p) - C_p.T @ (D * x_p * x_p)
    res_p = float(np.abs(lhs - rhs).sum())

    return max(res_f, res_p)


def _listened_by_partial(C, prof, i) -> bool:
    """Algun individu parcialment tossut dona pes a i."""
    return any(C[j, i] != 0 for j in prof.V_p)


def equilibrium_properties_check(net: InfluenceNetwork, prof: StubbornnessProfile, x_star) -> PropertyReport:
    """
    Avalua totes les afirmacions aplicables sobre un equilibri.

    Args:
        net: Xarxa validada.
        prof: Perfil que compleix l'Assumpció 2.
        x_star: Equilibri amb residu < 1e-10.

    Returns:
        PropertyReport amb fites, dicotomies V_f/V_p, no-autocràcia i ordenacions.
    """
    x = as_power_vector(x_star, net.n).x
    residual = fixed_point_residual(net, prof, x)
    if residual >= SOLVED_RESIDUAL:
        raise StaleEquilibrium(residual)

    n = net.n
    C = net.C
    theta = prof.theta
    V_f, V_p = prof.V_f, prof.V_p
    report = PropertyReport()

    # Fites generals
    report.add("interior", bool(np.all(x > 0) and np.all(x < 1)), f"min {x.min():.3e}")
    for i in V_f:
        if _listened_by_partial(C, prof, i):
            report.add(f"fully_stubborn_above_uniform[{i + 1}]", x[i] > 1.0 / n, f"x={x[i]!r}")
        else:
            report.add(f"fully_stubborn_equals_uniform[{i + 1}]",
                       abs(x[i] - 1.0 / n) <= EQUALITY_TOL, f"x={x[i]!r}")
    for i in V_p:
        report.add(f"partial_lower_bound[{i + 1}]", x[i] > (1.0 - theta[i]) / n, f"x={x[i]!r}")
        if not _listened_by_partial(C, prof, i):
            report.add(f"partial_below_uniform[{i + 1}]", x[i] < 1.0 / n, f"x={x[i]!r}")
    report.add("max_below_uniform_plus_theta_ave", x.max() < 1.0 / n + prof.theta_ave,
               f"max {x.max():.6f} < {1.0 / n + prof.theta_ave:.6f}")
    report.add("no_autocracy", x.max() < 1.0, f"max {x.max():.6f}")

    # Ordenacions amb xarxa general
    V_p_set = set(V_p)
    for i in V_f:
        for j in V_p:
            others = V_p_set - {j}
            if all(C[k, i] == C[k, j] for k in others):
                report.add(f"fully_over_partial[{i + 1},{j + 1}]", x[i] > x[j])
    for i, j in permutations(V_p, 2):
        if theta[i] <= theta[j]:
            continue
        others = V_p_set - {i, j}
        if C[i, j] == C[j, i] and all(C[k, i] == C[k, j] for k in others):
            report.add(f"more_stubborn_more_power[{i + 1},{j + 1}]", x[i] < x[j])
    if np.array_equal(C, C.T):
        for i, j in permutations(range(n), 2):
            if theta[i] > theta[j]:
                report.add(f"symmetric_ordering[{i + 1},{j + 1}]", x[i] < x[j])

    # Ordenacions amb estrella de centre parcialment tossut
    structure = analyze_structure(net)
    for l in structure.star_centers:
        if not 0 < theta[l] < 1:
            continue
        leaves_f = [i for i in V_f if i != l]
        leaves_p = [i for i in V_p if i != l]
        for i, j in permutations(leaves_f, 2):
            if C[l, i] > C[l, j]:
                report.add(f"star_fully_by_weight[{i + 1},{j + 1}]", x[i] > x[j])
        for i in leaves_f:
            for j in leaves_p:
                if C[l, i] == C[l, j]:
                    report.add(f"star_fully_over_partial[{i + 1},{j + 1}]", x[i] > x[j])
        for i, j in permutations(leaves_p, 2):
            if C[l, i] == C[l, j] and theta[i] < theta[j]:
                report.add(f"star_partial_by_theta[{i + 1},{j + 1}]", x[i] > x[j])
            if theta[i] == theta[j] and C[l, i] > C[l, j]:
                report.add(f"star_partial_by_weight[{i + 1},{j + 1}]", x[i] > x[j])
        break

    if report.failures:
        log.warning("Propietats no satisfetes: %s", [r.name for r in report.failures])
    return report


def power_bounds_hold(prof: StubbornnessProfile, x, tol: float = 1e-12) -> bool:
    """Fites generals de l'equilibri: interior, max < 1/n + theta_ave i x_i >= (1 - theta_i)/n."""
    x = np.asarray(getattr(x, "x", x), dtype=float)
    n = x.size
    lower = (1.0 - prof.theta) / n
    return bool(np.all(x > 0) and x.max() < 1.0 / n + prof.theta_ave + tol and np.all(x >= lower - tol))
