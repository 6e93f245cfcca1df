"""
detz command: log D(s) = F s(s-1) + G + log Z(s) + log Z_inf(s) into detz.csv
"""

from ZS_engine.commands.command_inputs import ZetaSource, s_points, surface_arg
from ZS_engine.commands.zeta_command import ZETA_COLUMNS, evaluation_row
from ZS_engine.config.output_store import OutputStore
from ZS_engine.config.run_config import RunConfig
from ZS_engine.data_models.report_models import CommandResult
from ZS_engine.data_models.zeta_models import DeterminantParams
from ZS_engine.errors import MalformedInput
from ZS_engine.kernels.zeta_det import determinant_from_zeta, laplacian_from_zeta


DETZ_COLUMNS = ["quantity"] + ZETA_COLUMNS


def _params(args, chi: int) -> DeterminantParams:
    if args.sarnak:
        if args.F is not None or args.G is not None:
            raise MalformedInput("--sarnak", "cannot be combined with --F/--G")
        return DeterminantParams.sarnak(chi)
    return DeterminantParams(F=args.F or 0.0, G=args.G or 0.0)


def cmd_detz(args, config: RunConfig, store: OutputStore) -> CommandResult:
    # 1. Points, constants and zeta source
    points = s_points(args)
    surface = surface_arg(args.surface, config)
    params = _params(args, surface.chi)
    source = ZetaSource(surface, config, args.lmax, args.kmax, args.extended)

    # 2. log D at every point
    rows = []
    for s in points:
        row = evaluation_row(determinant_from_zeta(source.evaluate(s), params, surface.chi))
        rows.append({"quantity": "log_D", **row})

    # 3. Optional log det Laplacian summary row
    if args.det_laplacian:
        source.extended = True
        row = evaluation_row(laplacian_from_zeta(source.evaluate(1.0), params, surface.chi))
        rows.append({"quantity": "log_det_laplacian", **row})

    path = store.write_csv("detz.csv", rows, DETZ_COLUMNS)
    return CommandResult(
        summary=f"log D at {len(points)} points (F = {params.F:.12g}, G = {params.G:.12g})",
        outputs=[str(path)],
    )
