"""
Escriptura de trajectòries en CSV llest per dibuixar.
"""
import csv
from pathlib import Path

from dynamics.power import Trajectory


def write_trajectory_csv(traj: Trajectory, output_path: str | Path) -> Path:
    """
    Escriu una fila per iterat amb capçalera step,x_1,...,x_n.

    Args:
        traj: Trajectòria a escriure.
        output_path: Ruta del CSV.

    Returns:
        Path al fitxer creat.
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    n = traj.final.n

    with open(output_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["step"] + [f"x_{i + 1}" for i in range(n)])
        for step, point in enumerate(traj.points):
            writer.writerow([step] + [format(v, ".17g") for v in point.x])

    return output_path
