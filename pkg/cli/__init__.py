"""
Command-line front end.
"""
from .artifacts import build_artifact, validate_artifact
from .commands import EXIT_INVALID, EXIT_OK, EXIT_USAGE, CommandRequest, load_config, run_command
from .curves import CurvePoint, ThetaCurves, curve_grid, emit_theta_curves, theta_on_curve, write_curves_csv

__all__ = [
    'CommandRequest', 'run_command', 'load_config', 'EXIT_OK', 'EXIT_INVALID', 'EXIT_USAGE',
    'build_artifact', 'validate_artifact',
    'CurvePoint', 'ThetaCurves', 'curve_grid', 'emit_theta_curves', 'theta_on_curve', 'write_curves_csv',
]
