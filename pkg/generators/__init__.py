from .trajectory_writer import write_trajectory_csv
from .report_writer import (
    write_json, trajectory_summary, write_summary_json, write_report_json, write_experiment_json,
)

__all__ = [
    'write_trajectory_csv',
    'write_json', 'trajectory_summary', 'write_summary_json', 'write_report_json', 'write_experiment_json',
]
