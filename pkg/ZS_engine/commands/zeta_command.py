"""
zeta command: log Z(s) on a list or grid of points into zeta.csv
"""

import mpmath

from ZS_engine.commands.command_inputs import ZetaSource, s_points, surface_arg
from ZS_engine.config.output_store import OutputStore
from ZS_engine.config.run_config import RunConfig
from ZS_engine.data_models.report_models import CommandResult
from ZS_engine.data_models.zeta_models import ZetaEvaluation


ZETA_COLUMNS = [
    "s_re",
    "s_im",
    "value_re",
    "value_im",
    "error_bound",
    "l_max",
    "k_max",
    "heuristic",
]


def evaluation_row(evaluation: ZetaEvaluation) -> dict:
    return {
        "s_re": evaluation.s.real,
        "s_im": evaluation.s.imag,
        "value_re": float(mpmath.re(evaluation.value)),
        "value_im": float(mpmath.im(evaluation.value)),
        "error_bound": evaluation.truncation_error_bound,
        "l_max": evaluation.l_max,
        "k_max": evaluation.k_max,
        "heuristic": evaluation.heuristic,
    }


def cmd_zeta(args, config: RunConfig, store: OutputStore) -> CommandResult:
    # 1. Points and zeta source
    points = s_points(args)
    surface = surface_arg(args.surface, config)
    source = ZetaSource(surface, config, args.lmax, args.kmax, args.extended)

    # 2. Evaluate in input order
    rows = [evaluation_row(source.evaluate(s)) for s in points]

    # 3. Table
    path = store.write_csv("zeta.csv", rows, ZETA_COLUMNS)
    heuristic = sum(1 for row in rows if row["heuristic"])
    suffix = f", {heuristic} heuristic" if heuristic else ""
    return CommandResult(summary=f"log Z at {len(rows)} points{suffix}", outputs=[str(path)])
