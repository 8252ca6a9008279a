"""
Certificats d'unicitat i convergència que es poden decidir només amb (C, theta).
"""
import logging
from dataclasses import dataclass, asdict
from typing import Optional

from network.influence import InfluenceNetwork, StubbornnessProfile
from network.structure import analyze_structure
from equilibrium.jacobian import contraction_constant
from equilibrium.properties import democracy_check

log = logging.getLogger(__name__)

UNIQUE_CONTRACTION = "unique: contraction certificate"
UNIQUE_STAR_FULLY = "unique: star with fully stubborn center"
UNIQUE_STAR_PARTIAL = "unique: star with partially stubborn center"
NOT_CERTIFIED = "uniqueness conjectured, not certified"


@dataclass(frozen=True)
class CertificateSet:
    """
    Certificats d'una instància.

    contraction_unique i contraction_convergent comparteixen la condició
    theta_max < n / (n + 2 (1 + zeta)); llavors kappa < 1.
    """
    contraction_unique: bool
    contraction_convergent: bool
    uniqueness_threshold: float
    kappa: float
    star_fully_convergent: bool
    star_partial_unique: bool
    star_partial_convergent: bool
    star_partial_sum: Optional[float]
    star_partial_bound: Optional[float]
    single_issue_convergent: bool
    democracy: bool
    democracy_eigen_residual: float

    @property
    def uniqueness(self) -> str:
        if self.contraction_unique:
            return UNIQUE_CONTRACTION
        if self.star_fully_convergent:
            return UNIQUE_STAR_FULLY
        if self.star_partial_unique:
            return UNIQUE_STAR_PARTIAL
        return NOT_CERTIFIED

    @property
    def certified(self) -> bool:
        return self.uniqueness != NOT_CERTIFIED

    def to_dict(self) -> dict:
        d = asdict(self)
        d["uniqueness"] = self.uniqueness
        return d


def _star_partial_test(net, prof, structure):
    """
    Centre parcialment tossut amb C_li = 0 per a les fulles parcialment tossudes
    (unicitat en forma tancada); la convergència demana a més que la suma de
    theta de V_p sense el centre sigui <= 4n/5 - 1.
    """
    bound = 4.0 * net.n / 5.0 - 1.0
    for l in structure.star_centers:
        if not 0 < prof.theta[l] < 1:
            continue
        leaves_p = [j for j in prof.V_p if j != l]
        if any(net.C[l, j] != 0 for j in leaves_p):
            continue
        total = float(prof.theta[leaves_p].sum())
        return True, total <= bound, total, bound
    return False, False, None, None


def compute_certificates(net: InfluenceNetwork, prof: StubbornnessProfile) -> CertificateSet:
    """
    Avalua tots els certificats.

    Args:
        net: Xarxa validada.
        prof: Perfil que compleix l'Assumpció 2.

    Returns:
        CertificateSet amb els valors numèrics usats en cada prova.
    """
    n = net.n
    threshold = n / (n + 2.0 * (1.0 + prof.zeta))
    kappa = contraction_constant(prof)
    contraction = prof.theta_max < threshold
    if contraction and kappa >= 1:
        log.warning("Certificat de contracció amb kappa = %.6f >= 1", kappa)

    structure = analyze_structure(net)
    star_fully = structure.is_star and any(prof.theta[c] == 0 for c in structure.star_centers)
    partial_unique, partial_conv, partial_sum, partial_bound = False, False, None, None
    if structure.is_star:
        partial_unique, partial_conv, partial_sum, partial_bound = _star_partial_test(net, prof, structure)

    demo = democracy_check(net, prof)
    return CertificateSet(
        contraction_unique=contraction,
        contraction_convergent=contraction,
        uniqueness_threshold=threshold,
        kappa=kappa,
        star_fully_convergent=star_fully,
        star_partial_unique=partial_unique,
        star_partial_convergent=partial_conv,
        star_partial_sum=partial_sum,
        star_partial_bound=partial_bound,
        single_issue_convergent=prof.theta_max < 0.5,
        democracy=demo.democratic,
        democracy_eigen_residual=demo.eigen_residual,
    )
