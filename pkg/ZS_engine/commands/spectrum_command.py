"""
spectrum command: enumerate primitive geodesic classes into spectrum.csv
"""

from ZS_engine.commands.command_inputs import spectrum_for, surface_arg
from ZS_engine.config.output_store import OutputStore
from ZS_engine.config.run_config import RunConfig
from ZS_engine.data_models.report_models import CommandResult
from ZS_engine.kernels.length_spectrum import spectrum_table


SPECTRUM_COLUMNS = ["word", "length", "primitive", "oriented_multiplicity"]


def cmd_spectrum(args, config: RunConfig, store: OutputStore) -> CommandResult:
    """
    Args (argparse namespace):
        surface: Surface JSON path
        lmax: Length cutoff
        allow_incomplete: Write a partial table instead of failing
    """
    # 1. Surface and enumeration
    surface = surface_arg(args.surface, config)
    spectrum = spectrum_for(surface, args.lmax, config, allow_incomplete=args.allow_incomplete)

    # 2. Table
    path = store.write_csv("spectrum.csv", spectrum_table(spectrum), SPECTRUM_COLUMNS)
    status = "complete" if spectrum.complete else "incomplete"
    return CommandResult(
        summary=f"{len(spectrum)} classes up to length {args.lmax:g} ({status})",
        outputs=[str(path)],
    )
