from .influence import (
    InfluenceNetwork, StubbornnessProfile, PowerVector,
    validate_network, make_profile, validate_profile,
    as_power_vector, uniform_power, vertex_power,
)
from .structure import (
    GraphStructure, analyze_structure, influence_graph,
    check_assumption_a1, check_assumption_a2,
)

__all__ = [
    'InfluenceNetwork', 'StubbornnessProfile', 'PowerVector',
    'validate_network', 'make_profile', 'validate_profile',
    'as_power_vector', 'uniform_power', 'vertex_power',
    'GraphStructure', 'analyze_structure', 'influence_graph',
    'check_assumption_a1', 'check_assumption_a2',
]
