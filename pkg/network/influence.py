"""
Tipus bàsics de la xarxa d'influència.
InfluenceNetwork (matriu C), StubbornnessProfile (theta) i PowerVector (punt del símplex).
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from config import ROW_SUM_TOL, SIMPLEX_TOL, SIMPLEX_RENORM_TOL
from errors import (
    NonSquare, RowSumViolation, NonzeroDiagonal, NegativeEntry,
    DimensionMismatch, SimplexViolation, AssumptionViolation, OutOfRange,
)

log = logging.getLogger(__name__)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class InfluenceNetwork:
    """Matriu d'interacció relativa C: estocàstica per files i diagonal nul·la."""
    C: np.ndarray
    renormalized_rows: Tuple[int, ...] = ()  # files (1-based) renormalitzades en validar

    @property
    def n(self) -> int:
        return self.C.shape[0]


@dataclass(frozen=True, eq=False)
class StubbornnessProfile:
    """
    Vector de susceptibilitats theta_i en [0, 1].

    El constructor només comprova el rang; l'Assumpció 2 (theta_i < 1 i algun
    theta_j > 0) la imposa validate_profile.
    """
    theta: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.ndim != 1 or theta.size < 2:
            raise OutOfRange(f"theta ha de ser un vector de mida n>=2, forma {theta.shape}")
        if not np.all(np.isfinite(theta)) or np.any(theta < 0) or np.any(theta > 1):
            raise OutOfRange(f"theta fora de [0, 1]: {theta.tolist()}")
        object.__setattr__(self, "theta", _frozen(theta))

    @property
    def n(self) -> int:
        return self.theta.size

    @property
    def theta_min(self) -> float:
        return float(self.theta.min())

    @property
    def theta_ave(self) -> float:
        return float(self.theta.mean())

    @property
    def theta_max(self) -> float:
        return float(self.theta.max())

    @property
    def zeta(self) -> float:
        return self.n * self.theta_ave - self.theta_min

    @property
    def V_f(self) -> Tuple[int, ...]:
        """Individus totalment tossuts (theta_i = 0), 0-based."""
        return tuple(int(i) for i in np.flatnonzero(self.theta == 0))

    @property
    def V_p(self) -> Tuple[int, ...]:
        """Individus parcialment tossuts (theta_i > 0), 0-based."""
        return tuple(int(i) for i in np.flatnonzero(self.theta > 0))

    @property
    def r(self) -> int:
        return len(self.V_f)


@dataclass(frozen=True, eq=False)
class PowerVector:
    """Punt del símplex: x >= 0 i suma 1."""
    x: np.ndarray
    renormalized: bool = field(default=False)

    @property
    def n(self) -> int:
        return self.x.size

    def __len__(self):
        return self.x.size

    def __getitem__(self, i):
        return self.x[i]


def validate_network(raw_matrix) -> InfluenceNetwork:
    """
    Valida una matriu d'interacció relativa.

    Args:
        raw_matrix: Matriu n x n (llista de llistes, ndarray o InfluenceNetwork).

    Returns:
        InfluenceNetwork validada. Les files dins de la tolerància es renormalitzen
        i queden anotades a renormalized_rows.
    """
    if isinstance(raw_matrix, InfluenceNetwork):
        return raw_matrix

    try:
        C = np.array(raw_matrix, dtype=float)
    except (TypeError, ValueError):
        # files de longitud diferent
        raise NonSquare(())
    if C.ndim != 2 or C.shape[0] != C.shape[1] or C.shape[0] < 2:
        raise NonSquare(C.shape)

    n = C.shape[0]
    for i in range(n):
        for j in range(n):
            if not np.isfinite(C[i, j]) or C[i, j] < 0 or C[i, j] > 1:
                raise NegativeEntry(i + 1, j + 1)
        if C[i, i] != 0:
            raise NonzeroDiagonal(i + 1)

    # Renormalitzar només quan la desviació supera el soroll d'arrodoniment
    renorm_floor = max(1e-15, 4 * n * np.finfo(float).eps)
    renormalized = []
    for i in range(n):
        total = C[i].sum()
        drift = abs(total - 1.0)
        if drift > ROW_SUM_TOL:
            raise RowSumViolation(i + 1, float(total))
        if drift > renorm_floor:
            C[i] = C[i] / total
            renormalized.append(i + 1)

    if renormalized:
        log.warning("Files renormalitzades: %s", renormalized)

    return InfluenceNetwork(C=_frozen(C), renormalized_rows=tuple(renormalized))


def make_profile(theta: Sequence[float], n: Optional[int] = None) -> StubbornnessProfile:
    """Crea un perfil comprovant la dimensió (sense imposar l'Assumpció 2)."""
    prof = theta if isinstance(theta, StubbornnessProfile) else StubbornnessProfile(theta)
    if n is not None and prof.n != n:
        raise DimensionMismatch(n, prof.n)
    return prof


def validate_profile(theta, n: Optional[int] = None) -> StubbornnessProfile:
    """Crea un perfil i imposa l'Assumpció 2."""
    prof = make_profile(theta, n)
    if prof.theta_max >= 1:
        i = int(np.argmax(prof.theta)) + 1
        raise AssumptionViolation("Assumpció 2", f"theta_{i} = 1")
    if prof.theta_max <= 0:
        raise AssumptionViolation("Assumpció 2", "cap individu parcialment tossut (tots theta = 0)")
    return prof


def as_power_vector(x, n: Optional[int] = None) -> PowerVector:
    """
    Converteix x en un PowerVector validat.

    Renormalitza quan |suma - 1| és dins (1e-14, 1e-12]; per sobre aixeca
    SimplexViolation.
    """
    if isinstance(x, PowerVector):
        if n is not None and x.n != n:
            raise DimensionMismatch(n, x.n)
        return x

    x = np.array(x, dtype=float).ravel()
    if n is not None and x.size != n:
        raise DimensionMismatch(n, x.size)
    if not np.all(np.isfinite(x)):
        raise SimplexViolation(f"x té components no finits: {x.tolist()}")
    if np.any(x < -SIMPLEX_TOL):
        raise SimplexViolation(f"x té components negatius: {x.tolist()}")
    x = np.clip(x, 0.0, None)

    drift = abs(x.sum() - 1.0)
    if drift > SIMPLEX_TOL:
        raise SimplexViolation(f"La suma de x és {x.sum()!r}, no 1")
    renormalized = False
    if drift > SIMPLEX_RENORM_TOL:
        x = x / x.sum()
        renormalized = True

    return PowerVector(x=_frozen(x), renormalized=renormalized)


def uniform_power(n: int) -> PowerVector:
    """Poder democràtic 1/n."""
    return PowerVector(x=_frozen(np.full(n, 1.0 / n)))


def vertex_power(n: int, i: int) -> PowerVector:
    """Vèrtex e_i del símplex (i 0-based)."""
    if not 0 <= i < n:
        raise OutOfRange(f"Vèrtex {i + 1} fora de 1..{n}")
    e = np.zeros(n)
    e[i] = 1.0
    return PowerVector(x=_frozen(e))
