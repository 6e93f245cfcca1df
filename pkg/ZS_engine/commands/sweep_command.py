"""
sweep command: systole and -log Z(1) along the uniform pants family into sweep.csv
"""

import numpy as np

from ZS_engine.config.output_store import OutputStore
from ZS_engine.config.run_config import RunConfig
from ZS_engine.data_models.report_models import CommandResult
from ZS_engine.errors import MalformedInput
from ZS_engine.kernels.moduli_bounds import properness_sweep


SWEEP_COLUMNS = ["ell", "systole", "minus_log_z1", "truncation_error_bound", "heuristic"]


def cmd_sweep(args, config: RunConfig, store: OutputStore) -> CommandResult:
    # 1. Grid
    if not args.pants_uniform:
        raise MalformedInput("--pants-uniform", "the uniform pants family is the only sweep family")
    if args.steps < 1:
        raise MalformedInput("--steps", "must be at least 1")
    if not 0 < args.lmin <= args.lmax:
        raise MalformedInput("--lmin", "need 0 < lmin <= lmax")
    grid = [float(x) for x in np.linspace(args.lmin, args.lmax, args.steps)]

    # 2. Sweep
    rows = properness_sweep(
        grid,
        cutoff_factor=config.sweep.length_cutoff_factor,
        convention=config.zeta_convention,
        threads=config.threads,
        max_words=config.enumeration.max_words,
    )

    # 3. Table
    path = store.write_csv("sweep.csv", [row.model_dump() for row in rows], SWEEP_COLUMNS)
    return CommandResult(summary=f"{len(rows)} sweep rows", outputs=[str(path)])
