"""
Informes JSON: resum de simulació, equilibri i experiment de Monte Carlo.
Els floats de Python es serialitzen amb repr, que és exacte per a 64 bits.
"""
import json
import math
from pathlib import Path
from typing import Optional

import numpy as np

from dynamics.power import Trajectory


def _default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"No serialitzable: {type(obj).__name__}")


def _clean(obj):
    """inf i nan no són JSON vàlid; es desen com a null."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def write_json(data: dict, output_path: str | Path) -> Path:
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(
        json.dumps(_clean(data), indent=2, ensure_ascii=False, default=_default),
        encoding="utf-8",
    )
    return output_path


def trajectory_summary(traj: Trajectory, rate: Optional[float] = None, **extra) -> dict:
    """Resum d'una simulació: convergència, residu, passos i taxa observada."""
    summary = {
        "model": traj.model,
        "converged": traj.converged,
        "residual": traj.final_residual,
        "steps": traj.steps,
        "observed_rate": rate,
        "damped": traj.damped,
        "renormalizations": traj.renormalizations,
        "final": [float(v) for v in traj.final.x],
    }
    summary.update(extra)
    return summary


def write_summary_json(traj: Trajectory, output_path: str | Path, rate: Optional[float] = None, **extra) -> Path:
    return write_json(trajectory_summary(traj, rate, **extra), output_path)


def write_report_json(report, output_path: str | Path, properties=None, skipped: Optional[str] = None) -> Path:
    """
    EquilibriumReport i informe de propietats a JSON.

    La clau "properties" sempre hi és; si no s'ha avaluat val null i
    "properties_skipped" en diu el motiu.
    """
    data = report.to_dict()
    data["properties"] = None if properties is None else properties.to_dict()
    if properties is None:
        data["properties_skipped"] = skipped or "no avaluades"
    return write_json(data, output_path)


def write_experiment_json(experiment, output_path: str | Path) -> Path:
    return write_json(experiment.to_dict(), output_path)
