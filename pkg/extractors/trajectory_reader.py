"""
Lectura d'una trajectòria emesa en CSV (capçalera step,x_1,...,x_n).
"""
import csv
from pathlib import Path

from errors import ConfigError
from network.influence import as_power_vector
from dynamics.power import Trajectory


def read_trajectory_csv(path: str | Path, model: str = "issues") -> Trajectory:
    """
    Reconstrueix una Trajectory. Els decimals de 17 xifres són exactes,
    per tant els valors coincideixen bit a bit amb els escrits.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"No s'ha trobat el fitxer: {path}")

    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if not header or header[0] != "step" or len(header) < 3:
            raise ConfigError(f"Capçalera CSV invàlida a {path}: {header}")
        n = len(header) - 1
        traj = Trajectory(model=model)
        for row in reader:
            if not row:
                continue
            if len(row) != n + 1:
                raise ConfigError(f"Fila amb {len(row)} columnes, s'esperaven {n + 1}")
            traj.points.append(as_power_vector([float(v) for v in row[1:]], n))
    return traj
