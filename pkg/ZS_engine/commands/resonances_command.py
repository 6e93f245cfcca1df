"""
resonances command: zeros of the zeta function in a rectangle into resonances.json
"""

import math

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ZS_engine.commands.command_inputs import spectrum_for, surface_arg
from ZS_engine.config.output_store import OutputStore
from ZS_engine.config.run_config import RunConfig
from ZS_engine.data_models.report_models import CommandResult
from ZS_engine.data_models.zeta_models import ResonanceSet
from ZS_engine.errors import BoundaryZero, MalformedInput
from ZS_engine.kernels.zero_finder import find_zeros
from ZS_engine.kernels.zeta_det import (
    cylinder_resonances,
    cylinder_zeta_log_derivative,
    spectrum_zeta_log_derivative,
)
from utils.util import log_warning


# outward edge shift per nudge, relative to the shorter rectangle side
NUDGE_FRACTION = 1e-3


def _widen(rect, shift: float):
    x0, x1, y0, y1 = rect
    return (x0 - shift, x1 + shift, y0 - shift, y1 + shift)


def _search(log_derivative, rect, tol: float, nudges: int):
    """find_zeros, moving every edge outward after a BoundaryZero when nudges > 0."""
    shift = 0.0
    for attempt in Retrying(
        stop=stop_after_attempt(nudges + 1),
        retry=retry_if_exception_type(BoundaryZero),
        reraise=True,
    ):
        with attempt:
            searched = _widen(rect, shift)
            try:
                return searched, find_zeros(log_derivative, searched, tol=tol)
            except BoundaryZero as e:
                side = min(rect[1] - rect[0], rect[3] - rect[2])
                shift += max(e.suggested_shift, NUDGE_FRACTION * side)
                if attempt.retry_state.attempt_number <= nudges:
                    log_warning("Resonances", f"{e}; moving the edges out by {shift:.3g}")
                raise


def _lattice_deviation(ell: float, location: complex) -> float:
    k = max(0, round(-location.real))
    n = round(location.imag * ell / (2.0 * math.pi))
    return abs(location - complex(-k, 2.0 * math.pi * n / ell))


def _lattice_count(ell: float, rect, convention, merge_tolerance: float) -> int:
    x0, x1, y0, y1 = rect
    k_max = max(0, math.floor(-x0))
    n_max = math.ceil(max(abs(y0), abs(y1)) * ell / (2.0 * math.pi))
    lattice = cylinder_resonances(ell, k_max, n_max, convention, merge_tolerance)
    return sum(m for z, m in lattice.points if x0 < z.real < x1 and y0 < z.imag < y1)


def cmd_resonances(args, config: RunConfig, store: OutputStore) -> CommandResult:
    """
    Args (argparse namespace):
        cylinder: Cylinder length, or None to use `surface`
        surface: Surface JSON path (truncated Euler product zeros, heuristic)
        rect: X0 X1 Y0 Y1
        tol: Location tolerance
        nudge: Number of outward edge moves allowed on BoundaryZero
    """
    tol = args.tol or config.tolerances.zero_location
    rect = tuple(args.rect)
    convention = config.zeta_convention

    # 1. Log-derivative of the zeta function
    if args.cylinder is not None:
        ell = args.cylinder
        source = {"cylinder": ell}
        log_derivative = lambda z: cylinder_zeta_log_derivative(ell, z, convention)
        heuristic = False
    elif args.surface is not None:
        surface = surface_arg(args.surface, config)
        spectrum = spectrum_for(surface, args.lmax or config.zeta.default_lmax, config)
        source = {"surface": args.surface, "l_max": spectrum.cutoff}
        log_derivative = lambda z: spectrum_zeta_log_derivative(spectrum, z, convention)
        # zeros of the truncated product only approximate resonances
        heuristic = True
    else:
        raise MalformedInput("--cylinder", "give --cylinder L or a surface file")

    # 2. Zero search
    searched, zeros = _search(log_derivative, rect, tol, args.nudge)

    # 3. Merge into a resonance set
    merge = config.tolerances.merge
    found = ResonanceSet(merge)
    for zero in zeros:
        found.add(zero.location, zero.multiplicity)

    # 4. Report
    encode = store.encode_number
    payload = {
        "source": source,
        "convention": convention,
        "rect": [encode(x) for x in searched],
        "tolerance": encode(tol),
        "heuristic": heuristic,
        "total_multiplicity": found.total_multiplicity(),
        "zeros": [{"re": encode(z.real), "im": encode(z.imag), "m": m} for z, m in found.points],
    }
    if args.cylinder is not None:
        payload["lattice_total_multiplicity"] = _lattice_count(args.cylinder, searched, convention, merge)
        payload["lattice_max_deviation"] = encode(
            max((_lattice_deviation(args.cylinder, z) for z, _ in found.points), default=0.0)
        )
    path = store.write_json("resonances.json", payload)
    return CommandResult(
        summary=f"{len(found)} zeros (total multiplicity {payload['total_multiplicity']}) in {searched}",
        outputs=[str(path)],
    )
