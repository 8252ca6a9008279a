"""
Càlcul de l'equilibri de poder social: iteració de punt fix, formes tancades
per a estrelles i sondeig multi-inici quan cap certificat garanteix unicitat.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from config import DEFAULT_TOL, MAX_ISSUES, SOLVED_RESIDUAL, MATCH_TOLERANCE
from errors import OutOfRange, PreconditionCliNonzero, NotStar, CenterFullyStubborn, CenterNotFullyStubborn
from network.influence import (
    InfluenceNetwork, StubbornnessProfile, PowerVector,
    uniform_power, vertex_power, validate_profile,
)
from dynamics.power import Trajectory, iterate_issue_sequence
from equilibrium.certificates import CertificateSet, compute_certificates
from equilibrium.properties import fixed_point_residual
from equilibrium.star import star_fully_stubborn_solution, star_partially_stubborn_solution

log = logging.getLogger(__name__)

METHODS = ("auto", "iterate", "closed-form")


@dataclass
class EquilibriumReport:
    """Equilibri calculat amb residu, mètode i certificats."""
    x_star: PowerVector
    residual: float
    iterations: int
    method: str
    certificates: CertificateSet
    solved: bool = False
    center: Optional[int] = None
    multi_start_spread: Optional[float] = None
    trajectory: Optional[Trajectory] = field(default=None, repr=False)

    @property
    def uniqueness(self) -> str:
        return self.certificates.uniqueness

    def to_dict(self) -> dict:
        """Floats complets (repr) per serialitzar a JSON sense pèrdua."""
        return {
            "method": self.method,
            "solved": self.solved,
            "x_star": [float(v) for v in self.x_star.x],
            "residual": self.residual,
            "iterations": self.iterations,
            "center": None if self.center is None else self.center + 1,
            "uniqueness": self.uniqueness,
            "multi_start_spread": self.multi_start_spread,
            "certificates": self.certificates.to_dict(),
        }


def _report(net, prof, x, iterations, method, certificates=None, **extra) -> EquilibriumReport:
    residual = fixed_point_residual(net, prof, x)
    certificates = certificates or compute_certificates(net, prof)
    return EquilibriumReport(
        x_star=x, residual=residual, iterations=iterations, method=method,
        certificates=certificates, solved=residual < SOLVED_RESIDUAL, **extra,
    )


def solve_fixed_point(
    net: InfluenceNetwork,
    prof: StubbornnessProfile,
    x0=None,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ISSUES,
) -> EquilibriumReport:
    """
    Itera F fins que el residu l1 és < tol.

    Args:
        net: Xarxa validada.
        prof: Perfil que compleix l'Assumpció 2.
        x0: Punt inicial (1/n per defecte).
        tol: Tolerància entre iterats consecutius.
        max_iter: Màxim de temes.

    Returns:
        EquilibriumReport; si no convergeix queda marcat com a no resolt amb
        l'últim residu.
    """
    prof = validate_profile(prof, net.n)
    x0 = uniform_power(net.n) if x0 is None else x0
    traj = iterate_issue_sequence(net, prof, x0, max_issues=max_iter, tol=tol, allow_damping=True)
    report = _report(net, prof, traj.final, traj.steps, "fixed-point", trajectory=traj)
    if not traj.converged:
        report.solved = False
    log.info("Punt fix: %d temes, residu %.3e, %s", traj.steps, report.residual,
             "resolt" if report.solved else "no resolt")
    return report


def star_fully_stubborn_equilibrium(net: InfluenceNetwork, prof: StubbornnessProfile) -> EquilibriumReport:
    """Equilibri tancat d'una estrella amb centre totalment tossut (unicitat incondicional)."""
    x, center = star_fully_stubborn_solution(net, prof)
    return _report(net, prof, x, 0, "star-fully-stubborn", center=center)


def star_partially_stubborn_equilibrium(
    net: InfluenceNetwork,
    prof: StubbornnessProfile,
    fallback: bool = True,
) -> EquilibriumReport:
    """
    Equilibri tancat d'una estrella amb centre parcialment tossut.

    Si algun C_li != 0 per a una fulla parcialment tossuda i fallback és cert,
    es recorre a solve_fixed_point amb un avís; altrament es propaga l'error.
    """
    try:
        x, center = star_partially_stubborn_solution(net, prof)
    except PreconditionCliNonzero as e:
        if not fallback:
            raise
        log.warning("%s; es resol per iteració", e)
        return solve_fixed_point(net, prof)
    return _report(net, prof, x, 0, "star-partially-stubborn", center=center)


def multi_start_spread(
    net: InfluenceNetwork,
    prof: StubbornnessProfile,
    starts: int = 20,
    seed: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ISSUES,
) -> float:
    """
    Evidència empírica d'unicitat: punts inicials aleatoris del símplex més els
    vèrtexs. Retorna la dispersió l1 màxima respecte del primer límit.
    """
    if starts < 1:
        raise OutOfRange(f"starts ha de ser >= 1 (rebut {starts})")
    n = net.n
    rng = np.random.default_rng(seed)
    inits = [rng.dirichlet(np.ones(n)) for _ in range(starts)]
    inits += [vertex_power(n, i) for i in range(n)]

    limits = [iterate_issue_sequence(net, prof, x0, max_issues=max_iter, tol=tol).final.x for x0 in inits]
    reference = limits[0]
    spread = max(float(np.abs(x - reference).sum()) for x in limits)
    if spread > MATCH_TOLERANCE:
        log.warning("Sondeig multi-inici: dispersió %.3e > %.1e", spread, MATCH_TOLERANCE)
    return spread


def solve_equilibrium(
    net: InfluenceNetwork,
    prof: StubbornnessProfile,
    method: str = "auto",
    x0=None,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ISSUES,
    multi_start: bool = False,
    seed: Optional[int] = None,
) -> EquilibriumReport:
    """
    Tria el mètode: forma tancada si la topologia ho permet, punt fix altrament.

    Args:
        method: "auto", "iterate" o "closed-form" (aquest darrer aixeca
            NotStar o l'error del centre si no hi ha forma tancada).
        multi_start: Executa el sondeig multi-inici quan no hi ha certificat d'unicitat.
    """
    if method not in METHODS:
        raise OutOfRange(f"Mètode desconegut: {method}")
    prof = validate_profile(prof, net.n)

    report = None
    if method != "iterate":
        try:
            report = star_fully_stubborn_equilibrium(net, prof)
        except (NotStar, CenterNotFullyStubborn):
            try:
                report = star_partially_stubborn_equilibrium(net, prof, fallback=False)
            except (NotStar, CenterFullyStubborn, PreconditionCliNonzero):
                if method == "closed-form":
                    raise
    if report is None:
        report = solve_fixed_point(net, prof, x0=x0, tol=tol, max_iter=max_iter)

    if multi_start and not report.certificates.certified:
        report.multi_start_spread = multi_start_spread(net, prof, seed=seed, tol=tol, max_iter=max_iter)
    return report
