"""
Estudi aleatori d'unicitat: per a cada parell (C, Theta) es compara el límit de
molts punts inicials amb un límit de referència.

Cada cel·la (parell, inici) té el seu propi flux derivat de la llavor amb
SeedSequence, de manera que el resultat no depèn de l'ordre ni del paral·lelisme.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from config import DEFAULT_TOL, MAX_ISSUES, MATCH_TOLERANCE, THREADS
from errors import OutOfRange
from network.influence import vertex_power
from dynamics.power import iterate_issue_sequence
from dynamics.single_issue import iterate_single_issue
from equilibrium.properties import power_bounds_hold
from montecarlo.sampling import ChernoffPlan, sample_instance, sample_simplex

log = logging.getLogger(__name__)

MODELS = ("issues", "single")
INSTANCE_STREAM = 0
INIT_STREAM = 1


@dataclass
class PairResult:
    """Resum d'un parell (C, Theta)."""
    pair: int
    reference_x_star: List[float]
    mismatch_count: int
    max_spread: float
    init_count: int = 1
    non_convergent: List[int] = field(default_factory=list)
    bound_violations: int = 0

    @property
    def empirical_probability(self) -> float:
        """p-hat del parell: coincidències / inicis."""
        return (self.init_count - self.mismatch_count) / self.init_count

    def to_dict(self) -> dict:
        return {
            "pair": self.pair,
            "reference_x_star": self.reference_x_star,
            "mismatch_count": self.mismatch_count,
            "empirical_probability": self.empirical_probability,
            "max_spread": self.max_spread,
            "non_convergent": self.non_convergent,
            "bound_violations": self.bound_violations,
        }


@dataclass
class UniquenessExperiment:
    seed: int
    n: int
    model: str
    pair_count: int
    init_count: int
    tolerance: float
    theta_max_cap: float = 1.0
    plan: Optional[ChernoffPlan] = None
    results: List[PairResult] = field(default_factory=list)

    @property
    def mismatches(self) -> int:
        return sum(r.mismatch_count for r in self.results)

    @property
    def matches(self) -> int:
        return sum(r.init_count - r.mismatch_count for r in self.results)

    @property
    def empirical_probability(self) -> float:
        """p-hat global: coincidències / (parells x inicis)."""
        cells = sum(r.init_count for r in self.results)
        if not cells:
            return float("nan")
        return self.matches / cells

    @property
    def pair_fraction(self) -> float:
        """Fracció de parells on tots els inicis arriben al límit de referència."""
        if not self.results:
            return float("nan")
        return sum(r.mismatch_count == 0 for r in self.results) / len(self.results)

    @property
    def non_convergent(self) -> List[Tuple[int, int]]:
        return [(r.pair, k) for r in self.results for k in r.non_convergent]

    def pair_probability(self, pair: int) -> float:
        """p-hat del parell: coincidències / inicis."""
        return self.results[pair].empirical_probability

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n": self.n,
            "model": self.model,
            "pair_count": self.pair_count,
            "init_count": self.init_count,
            "tolerance": self.tolerance,
            "theta_max_cap": self.theta_max_cap,
            "plan": None if self.plan is None else {
                "epsilon": self.plan.epsilon, "eta": self.plan.eta, "N": self.plan.N},
            "mismatches": self.mismatches,
            "matches": self.matches,
            "empirical_probability": self.empirical_probability,
            "pair_fraction": self.pair_fraction,
            "pairs": [r.to_dict() for r in self.results],
            "non_convergent": [{"pair": p + 1, "init": k + 1} for p, k in self.non_convergent],
        }


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _limit(model, net, prof, x0, tol, max_steps):
    if model == "single":
        return iterate_single_issue(net, prof, x0, max_steps=max_steps, tol=tol)
    return iterate_issue_sequence(net, prof, x0, max_issues=max_steps, tol=tol)


def run_pair(seed: int, pair: int, n: int, init_count: int, model: str,
             tolerance: float, theta_max_cap: float = 1.0,
             tol: float = DEFAULT_TOL, max_steps: int = MAX_ISSUES) -> PairResult:
    """
    Executa un parell: referència des del vèrtex e_1 i init_count inicis aleatoris.

    Les no-convergències es registren al manifest del parell; no són fatals.
    """
    net, prof = sample_instance(_stream(seed, INSTANCE_STREAM, pair), n, theta_max_cap)
    reference = _limit(model, net, prof, vertex_power(n, 0), tol, max_steps)
    ref = reference.final.x

    result = PairResult(pair=pair, reference_x_star=[float(v) for v in ref],
                        mismatch_count=0, max_spread=0.0, init_count=init_count)
    if not reference.converged:
        log.warning("Parell %d: la referència no ha convergit", pair + 1)
    if not power_bounds_hold(prof, ref):
        result.bound_violations += 1

    for k in range(init_count):
        x0 = sample_simplex(_stream(seed, INIT_STREAM, pair, k), n)
        traj = _limit(model, net, prof, x0, tol, max_steps)
        if not traj.converged:
            result.non_convergent.append(k)
        x = traj.final.x
        spread = float(np.abs(x - ref).sum())
        result.max_spread = max(result.max_spread, spread)
        if not spread <= tolerance:
            result.mismatch_count += 1
        if not power_bounds_hold(prof, x):
            result.bound_violations += 1
    return result


def run_uniqueness_experiment(
    pair_count: int,
    init_count: int,
    n: int,
    seed: int,
    model: str = "issues",
    tolerance: float = MATCH_TOLERANCE,
    theta_max_cap: float = 1.0,
    plan: Optional[ChernoffPlan] = None,
    n_jobs: int = THREADS,
    tol: float = DEFAULT_TOL,
    max_steps: int = MAX_ISSUES,
) -> UniquenessExperiment:
    """
    Estima la probabilitat que tots els inicis convergeixin al mateix equilibri.

    Args:
        pair_count: Nombre de parells (C, Theta).
        init_count: Inicis aleatoris per parell.
        n: Mida de la xarxa.
        seed: Llavor de 64 bits.
        model: "issues" o "single".
        tolerance: Radi l1 de "mateix equilibri".
        n_jobs: Treballadors de joblib (-1 = tots els nuclis).

    Returns:
        UniquenessExperiment amb resums per parell i el manifest de no-convergència.
    """
    if model not in MODELS:
        raise OutOfRange(f"Model desconegut: {model}")
    if pair_count < 1 or init_count < 1:
        raise OutOfRange(f"Comptes invàlids: {pair_count} parells, {init_count} inicis")
    if tolerance < 0:
        raise OutOfRange(f"La tolerància ha de ser >= 0 (rebut {tolerance})")

    log.info("Experiment d'unicitat: %d x %d, n=%d, model=%s, llavor %d",
             pair_count, init_count, n, model, seed)
    results = Parallel(n_jobs=n_jobs)(
        delayed(run_pair)(seed, p, n, init_count, model, tolerance, theta_max_cap, tol, max_steps)
        for p in range(pair_count)
    )

    exp = UniquenessExperiment(
        seed=seed, n=n, model=model, pair_count=pair_count, init_count=init_count,
        tolerance=tolerance, theta_max_cap=theta_max_cap, plan=plan, results=list(results),
    )
    if exp.non_convergent:
        log.warning("%d cel·les sense convergir", len(exp.non_convergent))
    return exp
