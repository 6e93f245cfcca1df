"""
invariants command: heat invariants, Polyakov integral and Jensen check of a
conformal factor into invariants.json
"""

from ZS_engine.commands.command_inputs import bump_factor, load_chart, load_phi
from ZS_engine.config.output_store import OutputStore
from ZS_engine.config.run_config import RunConfig
from ZS_engine.data_models.report_models import CommandResult
from ZS_engine.errors import MalformedInput
from ZS_engine.kernels.conformal_heat import (
    compactness_bounds,
    heat_invariant_leading_term,
    heat_invariants,
    jensen_bound_check,
    polyakov_logD1,
)


def _conformal_factor(args, config: RunConfig):
    chart, inline_bump = load_chart(args.chart)
    smoothness = config.heat.smoothness_bound
    if args.phi is not None:
        return load_phi(args.phi, chart, smoothness), "phi"
    if args.bump is not None:
        if args.bump not in config.heat.bumps:
            raise MalformedInput("--bump", f"unknown bump {args.bump!r}; configured: {sorted(config.heat.bumps)}")
        return bump_factor(chart, config.heat.bumps[args.bump], smoothness), args.bump
    if inline_bump is not None:
        return bump_factor(chart, inline_bump, smoothness), "chart"
    raise MalformedInput("phi", "give a phi CSV, --bump NAME or a 'bump' section in the chart file")


def cmd_invariants(args, config: RunConfig, store: OutputStore) -> CommandResult:
    # 1. Conformal factor
    cf, origin = _conformal_factor(args, config)

    # 2. Invariants and checks
    invariants = heat_invariants(cf)
    log_d1 = polyakov_logD1(cf)
    jensen = jensen_bound_check(cf, invariants, config.tolerances.bound_relative)

    # 3. Report
    encode = store.encode_number
    payload = {
        "conformal_factor": origin,
        "chart": cf.chart.model_dump(),
        "t_supp": encode(cf.t_supp),
        "a0": encode(invariants.a0),
        "a1": encode(invariants.a1),
        "a2": encode(invariants.a2),
        "quadrature_error_estimate": encode(invariants.quadrature_error_estimate),
        "a0_error": encode(invariants.a0_error),
        "a1_error": encode(invariants.a1_error),
        "a2_error": encode(invariants.a2_error),
        "polyakov_logD1": encode(log_d1),
        "jensen": {
            "lhs": encode(jensen.lhs),
            "rhs": encode(jensen.rhs),
            "holds": jensen.holds,
            "normalization_area": encode(jensen.normalization_area),
        },
    }
    if args.aj is not None:
        j, c_j = int(args.aj[0]), args.aj[1]
        payload["leading_term"] = {"j": j, "c_j": encode(c_j), "value": encode(heat_invariant_leading_term(cf, j, c_j))}
    if args.compactness is not None:
        payload["compactness"] = [
            store.encode_tree(report.model_dump())
            for report in compactness_bounds(cf, args.compactness, config.tolerances.bound_relative)
        ]

    path = store.write_json("invariants.json", payload)
    return CommandResult(
        summary=f"a0 = {invariants.a0:.12g}, a1 = {invariants.a1:.3g}, a2 = {invariants.a2:.12g}",
        outputs=[str(path)],
    )
