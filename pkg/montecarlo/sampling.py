"""
Mostreig aleatori: mida de mostra de Chernoff, punts del símplex i instàncies (C, Theta).
"""
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from errors import OutOfRange
from network.influence import (
    InfluenceNetwork, StubbornnessProfile, PowerVector,
    as_power_vector, validate_network, validate_profile,
)


@dataclass(frozen=True)
class ChernoffPlan:
    """N >= log(2/eta) / (2 epsilon^2)."""
    epsilon: float
    eta: float
    N: int

    @classmethod
    def from_bounds(cls, epsilon: float, eta: float) -> "ChernoffPlan":
        return cls(epsilon=epsilon, eta=eta, N=chernoff_sample_size(epsilon, eta))


def chernoff_sample_size(epsilon: float, eta: float) -> int:
    """
    Nombre de mostres perquè l'error de la probabilitat empírica sigui < epsilon
    amb confiança 1 - eta.
    """
    if not 0 < epsilon < 1:
        raise OutOfRange(f"epsilon ha de ser a (0,1) (rebut {epsilon})")
    if not 0 < eta < 1:
        raise OutOfRange(f"eta ha de ser a (0,1) (rebut {eta})")
    return max(1, math.ceil(math.log(2.0 / eta) / (2.0 * epsilon ** 2)))


def _simplex_draw(rng: np.random.Generator, k: int) -> np.ndarray:
    e = rng.standard_exponential(k)
    return e / e.sum()


def sample_simplex(rng: np.random.Generator, n: int) -> PowerVector:
    """Punt uniforme de Delta_n: n exponencials normalitzades per la suma."""
    if n < 1:
        raise OutOfRange(f"n ha de ser >= 1 (rebut {n})")
    return as_power_vector(_simplex_draw(rng, n), n)


def sample_instance(
    rng: np.random.Generator,
    n: int,
    theta_max_cap: float = 1.0,
) -> Tuple[InfluenceNetwork, StubbornnessProfile]:
    """
    Instància aleatòria.

    Cada fila de C reparteix els pesos fora de la diagonal uniformement sobre
    Delta_{n-1}; theta_i és uniforme a [0, theta_max_cap) i es remostreja fins
    que hi ha algun individu parcialment tossut.
    """
    if n < 2:
        raise OutOfRange(f"n ha de ser >= 2 (rebut {n})")
    if not 0 < theta_max_cap <= 1:
        raise OutOfRange(f"theta_max_cap ha de ser a (0,1] (rebut {theta_max_cap})")

    C = np.zeros((n, n))
    off = ~np.eye(n, dtype=bool)
    for i in range(n):
        C[i, off[i]] = _simplex_draw(rng, n - 1)

    theta = rng.uniform(0.0, theta_max_cap, n)
    while theta.max() <= 0:
        theta = rng.uniform(0.0, theta_max_cap, n)

    return validate_network(C), validate_profile(theta, n)
