"""
CLI commands
"""

from ZS_engine.commands.spectrum_command import cmd_spectrum
from ZS_engine.commands.zeta_command import cmd_zeta
from ZS_engine.commands.detz_command import cmd_detz
from ZS_engine.commands.resonances_command import cmd_resonances
from ZS_engine.commands.invariants_command import cmd_invariants
from ZS_engine.commands.sweep_command import cmd_sweep
from ZS_engine.commands.bounds_command import cmd_bounds

__all__ = [
    "cmd_spectrum",
    "cmd_zeta",
    "cmd_detz",
    "cmd_resonances",
    "cmd_invariants",
    "cmd_sweep",
    "cmd_bounds",
]
