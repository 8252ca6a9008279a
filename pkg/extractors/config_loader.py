"""
Lectura de la configuració d'una xarxa (JSON) i de l'especificació de x(0).
"""
import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from config import DEFAULT_TOL, MAX_ISSUES
from errors import ConfigError, DimensionMismatch
from network.influence import (
    InfluenceNetwork, StubbornnessProfile, PowerVector,
    as_power_vector, make_profile, uniform_power, validate_network, vertex_power,
)

log = logging.getLogger(__name__)

ALLOWED_KEYS = {"n", "C", "theta"}
MODELS = ("issues", "single", "perceived")

_VERTEX = re.compile(r"^vertex\((\d+)\)$")
_RANDOM = re.compile(r"^random\((\d+)\)$")


@dataclass(frozen=True)
class ScenarioConfig:
    """Escenari de simulació construït a partir dels flags de la CLI."""
    network_path: Path
    model: str = "issues"
    x0: str = "uniform"
    tol: float = DEFAULT_TOL
    max_steps: int = MAX_ISSUES
    output: Optional[Path] = None

    def __post_init__(self):
        if not Path(self.network_path).exists():
            raise ConfigError(f"No s'ha trobat el fitxer: {self.network_path}")
        if self.model not in MODELS:
            raise ConfigError(f"Model desconegut: {self.model} (opcions: {', '.join(MODELS)})")


def read_config(path: str | Path) -> dict:
    """
    Llegeix el JSON d'una xarxa i comprova les claus.

    Returns:
        Diccionari amb "C", "theta" i opcionalment "n".
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"No s'ha trobat el fitxer: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ConfigError(f"JSON invàlid a {path}: {e}")

    if not isinstance(data, dict):
        raise ConfigError("La configuració ha de ser un objecte JSON")
    unknown = set(data) - ALLOWED_KEYS
    if unknown:
        raise ConfigError(f"Claus desconegudes: {', '.join(sorted(unknown))}")
    missing = {"C", "theta"} - set(data)
    if missing:
        raise ConfigError(f"Falten claus: {', '.join(sorted(missing))}")
    return data


def load_network(path: str | Path) -> Tuple[InfluenceNetwork, StubbornnessProfile]:
    """
    Carrega i valida (C, theta). L'Assumpció 2 no s'imposa aquí.
    """
    data = read_config(path)
    net = validate_network(data["C"])
    if "n" in data and data["n"] != net.n:
        raise DimensionMismatch(data["n"], net.n)
    try:
        theta = np.asarray(data["theta"], dtype=float)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"theta no és un vector numèric: {e}")
    prof = make_profile(theta, net.n)
    log.info("Xarxa carregada de %s (n=%d)", path, net.n)
    return net, prof


def parse_x0(spec: str, n: int) -> Tuple[PowerVector, Optional[int]]:
    """
    Interpreta l'especificació de x(0).

    Formats: "uniform", "vertex(i)" (1-based), "random(seed)", o un vector
    explícit "0.2,0.3,0.5" (també en forma de llista JSON).

    Returns:
        (x0, llavor usada o None).
    """
    spec = spec.strip()
    if spec == "uniform":
        return uniform_power(n), None

    m = _VERTEX.match(spec)
    if m:
        return vertex_power(n, int(m.group(1)) - 1), None

    m = _RANDOM.match(spec)
    if m:
        seed = int(m.group(1))
        e = np.random.default_rng(seed).standard_exponential(n)
        return as_power_vector(e / e.sum(), n), seed

    try:
        values = json.loads(spec) if spec.startswith("[") else [float(v) for v in spec.split(",")]
    except (ValueError, json.JSONDecodeError):
        raise ConfigError(f"Especificació de x0 no reconeguda: {spec}")
    return as_power_vector(values, n), None
