"""
Escenari de l'estrella de tres nodes: centre 1 amb pesos (0.2, 0.8) cap a les fulles.
"""
from typing import List, Optional

import numpy as np

from config import DEFAULT_TOL, MAX_ISSUES
from network.influence import InfluenceNetwork, validate_network, validate_profile
from dynamics.power import Trajectory, iterate_issue_sequence
from dynamics.single_issue import iterate_single_issue
from montecarlo.sampling import sample_simplex

STAR_C = [[0.0, 0.2, 0.8],
          [1.0, 0.0, 0.0],
          [1.0, 0.0, 0.0]]

# Perfils que fan gran el poder del node 1, 2 o 3 respectivament
STAR_PROFILES = {
    "center": (0.1, 0.0, 0.6),
    "light_leaf": (0.9, 0.0, 0.9),
    "heavy_leaf": (0.9, 0.0, 0.1),
}


def star_network() -> InfluenceNetwork:
    return validate_network(STAR_C)


def star_runs(
    theta,
    runs: int = 50,
    seed: Optional[int] = None,
    model: str = "issues",
    tol: float = DEFAULT_TOL,
    max_steps: int = MAX_ISSUES,
) -> List[Trajectory]:
    """Trajectòries des de punts inicials uniformes al símplex, un flux per execució."""
    net = star_network()
    prof = validate_profile(theta, net.n)
    children = np.random.SeedSequence(seed).spawn(runs)
    trajectories = []
    for child in children:
        x0 = sample_simplex(np.random.default_rng(child), net.n)
        if model == "single":
            trajectories.append(iterate_single_issue(net, prof, x0, max_steps=max_steps, tol=tol))
        else:
            trajectories.append(iterate_issue_sequence(net, prof, x0, max_issues=max_steps, tol=tol))
    return trajectories
