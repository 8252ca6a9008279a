from .config_loader import ScenarioConfig, read_config, load_network, parse_x0
from .trajectory_reader import read_trajectory_csv

__all__ = ['ScenarioConfig', 'read_config', 'load_network', 'parse_x0', 'read_trajectory_csv']
