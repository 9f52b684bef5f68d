import sys
import click
from dvrgeom.blowup import resolve as resolve_model
from dvrgeom.decorators.common_decorators import (
    budget_options,
    debug_option,
    exit_codes,
    force_option,
    method_option,
    report_options,
)
from dvrgeom.quadsing import parse_local_model
from dvrgeom.report import NEGATIVE, POSITIVE, Report, emit
from dvrgeom.rings import parse_ring
from dvrgeom.settings import load_settings
from dvrgeom.utils import compute_sha256, debug_log


@click.command()
@debug_option
@force_option
@click.argument("literal")
@click.option("--ring", "ring_text", required=False,
              help="Coefficient ring when the literal has no ring=, e.g. Zmod(5^4).")
@click.option("--verify", "verify_charts", is_flag=True,
              help="Also check the chart presentations at every step.")
@method_option
@budget_options
@report_options
@exit_codes
def resolve(literal, ring_text, verify_charts, method, budget, ext_bound, steps, fmt, report,
            force, debug):
    """
    Resolve an ordinary quadratic local model, e.g.
    oq(case=i, n=1, Q=x1*x2, c=pi^2), by successive blow-ups.
    """
    settings = load_settings().merged(points=budget, ext=ext_bound, steps=steps)
    ring = parse_ring(ring_text) if ring_text else None
    local = parse_local_model(literal, ring)
    debug_log(f"Debug: parsed {local.to_text()} over {local.ring}", debug)
    result = Report(
        "resolve",
        {
            "literal": literal,
            "sha256": compute_sha256(literal),
            "ring": str(local.ring),
            "method": method,
            "verify": verify_charts,
            **settings.to_dict(),
        },
    )
    resolution = resolve_model(
        local,
        method,
        settings.ext,
        settings.points,
        settings.steps,
        verify_charts,
        debug,
        debug_log,
    )
    result.add("resolution", resolution.to_dict())
    result.add("summary", resolution.summary())
    result.conclude(POSITIVE if resolution.passed else NEGATIVE)
    emit(result, fmt, report, force, debug)
    sys.exit(result.exit_code)
