from .sampling import ChernoffPlan, chernoff_sample_size, sample_simplex, sample_instance
from .experiment import PairResult, UniquenessExperiment, run_pair, run_uniqueness_experiment
from .scenarios import STAR_C, STAR_PROFILES, star_network, star_runs

__all__ = [
    'ChernoffPlan', 'chernoff_sample_size', 'sample_simplex', 'sample_instance',
    'PairResult', 'UniquenessExperiment', 'run_pair', 'run_uniqueness_experiment',
    'STAR_C', 'STAR_PROFILES', 'star_network', 'star_runs',
]
