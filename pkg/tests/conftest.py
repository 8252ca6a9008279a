"""Fixtures compartides."""
import os
import sys
import tempfile
from pathlib import Path

# Directoris temporals abans d'importar config
_TMP = Path(tempfile.mkdtemp(prefix="socialpower-tests-"))
os.environ.setdefault("SOCIALPOWER_OUTPUT_DIR", str(_TMP / "output"))
os.environ.setdefault("SOCIALPOWER_DB", str(_TMP / "ledger.db"))
os.environ.setdefault("SOCIALPOWER_THREADS", "1")

sys.path.insert(0, str(Path(__file__).parent.parent))

import json

import numpy as np
import pytest

from network import validate_network, make_profile, validate_profile
from montecarlo import sample_instance

STAR_C = [[0.0, 0.2, 0.8],
          [1.0, 0.0, 0.0],
          [1.0, 0.0, 0.0]]


def complete_uniform(n: int) -> np.ndarray:
    """Xarxa completa amb pesos 1/(n-1): doblement estocàstica."""
    C = np.full((n, n), 1.0 / (n - 1))
    np.fill_diagonal(C, 0.0)
    return C


def circulant(n: int) -> np.ndarray:
    """Cada individu escolta només el següent."""
    C = np.zeros((n, n))
    for i in range(n):
        C[i, (i + 1) % n] = 1.0
    return C


def star(center_row, theta):
    """Estrella amb centre 0: les fulles escolten només el centre."""
    n = len(center_row)
    C = np.zeros((n, n))
    C[0] = center_row
    C[1:, 0] = 1.0
    return validate_network(C), validate_profile(theta, n)


@pytest.fixture
def star_net():
    return validate_network(STAR_C)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_instances():
    """Generador d'instàncies aleatòries reproduïbles."""
    def make(count, n=4, cap=1.0, seed=7):
        g = np.random.default_rng(seed)
        return [sample_instance(g, n, cap) for _ in range(count)]
    return make


@pytest.fixture
def write_config(tmp_path):
    """Escriu un JSON de xarxa i en retorna la ruta."""
    def write(C, theta, name="net.json", **extra):
        path = tmp_path / name
        data = {"C": np.asarray(C).tolist(), "theta": list(theta)}
        data.update(extra)
        path.write_text(json.dumps(data))
        return path
    return write
