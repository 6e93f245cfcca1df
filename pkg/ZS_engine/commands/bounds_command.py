"""
bounds command: systole, zeta and Bers collar bounds of one surface into bounds.json
"""

from ZS_engine.commands.command_inputs import surface_arg
from ZS_engine.config.output_store import OutputStore
from ZS_engine.config.run_config import RunConfig
from ZS_engine.data_models.report_models import BoundReport, CommandResult
from ZS_engine.data_models.surface_models import PantsSpec
from ZS_engine.errors import MalformedInput
from ZS_engine.kernels.conformal_heat import zero_volume
from ZS_engine.kernels.moduli_bounds import (
    bers_curve_bound_check,
    systole_bound_check,
    zeta_bound_check,
)
from utils.util import log_warning


def _encoded(report: BoundReport, store: OutputStore) -> dict:
    # context may carry mpmath values at working precision
    return store.encode_tree(report.model_dump())


def cmd_bounds(args, config: RunConfig, store: OutputStore) -> CommandResult:
    # 1. Surface
    surface = surface_arg(args.surface, config)
    l_max = args.lmax or config.zeta.default_lmax
    options = {
        "convention": config.zeta_convention,
        "threads": config.threads,
        "max_words": config.enumeration.max_words,
        "relative_tolerance": config.tolerances.bound_relative,
    }

    # 2. Systole and zeta bounds
    reports = [
        systole_bound_check(surface, l_max, **options),
        zeta_bound_check(surface, l_max, **options),
    ]

    # 3. Bers collar steps (pants only)
    if args.bers_t:
        if surface.kind != "pants":
            raise MalformedInput("--bers-t", "the collar inequality is implemented for pants only")
        pants = PantsSpec.create(*surface.boundary_lengths)
        reports.extend(
            bers_curve_bound_check(pants, t, config.tolerances.bound_relative) for t in args.bers_t
        )

    # 4. Report
    failed = [r.quantity for r in reports if not r.holds]
    for quantity in failed:
        log_warning("Bounds", f"{quantity} does not hold")
    payload = {
        "surface": {
            "kind": surface.kind,
            "chi": surface.chi,
            "boundary_lengths": list(surface.boundary_lengths),
            "zero_volume": store.encode_number(
                zero_volume(surface, config.heat.epsilon_ladder, config.tolerances.fit_residual)
            ),
        },
        "reports": [_encoded(r, store) for r in reports],
    }
    path = store.write_json("bounds.json", payload)
    return CommandResult(
        summary=f"{len(reports) - len(failed)}/{len(reports)} bounds hold",
        outputs=[str(path)],
    )
