from .opinion import build_w, fj_step, compute_v, iterate_fj, w_kernel, v_kernel
from .power import (
    Trajectory, f_map, f_kernel, iterate_issue_sequence, perceived_power_process,
    iterate_perceived_sequence,
)
from .single_issue import SingleIssueState, initial_state, single_issue_step, iterate_single_issue

__all__ = [
    'build_w', 'fj_step', 'compute_v', 'iterate_fj', 'w_kernel', 'v_kernel',
    'Trajectory', 'f_map', 'f_kernel', 'iterate_issue_sequence', 'perceived_power_process',
    'iterate_perceived_sequence',
    'SingleIssueState', 'initial_state', 'single_issue_step', 'iterate_single_issue',
]
