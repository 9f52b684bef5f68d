import sys
import click
from dvrgeom.bertini import find_good_hypersurface
from dvrgeom.decorators.common_decorators import (
    budget_options,
    debug_option,
    exit_codes,
    force_option,
    method_option,
    model_option,
    report_options,
    seed_option,
)
from dvrgeom.loader import open_scheme
from dvrgeom.report import POSITIVE, Report, emit, file_inputs
from dvrgeom.utils import debug_log


@click.command("find-hypersurface")
@debug_option
@force_option
@model_option
@method_option
@click.option("--degree", type=int, default=2, show_default=True,
              help="Degree of the hypersurface section.")
@click.option("--samples", type=int, required=False,
              help="Random forms drawn when the exhaustive scan is over budget.")
@seed_option
@budget_options
@report_options
@exit_codes
def find_hypersurface(model, method, degree, samples, seed, budget, ext_bound, steps, fmt,
                      report, force, debug):
    """
    Find a hypersurface meeting the model, or every stratum of its
    declared components, transversally.
    """
    scheme, text, settings = open_scheme(
        model, debug, points=budget, ext=ext_bound, steps=steps, samples=samples
    )
    result = Report(
        "find-hypersurface",
        file_inputs(model, text, method=method, degree=degree, seed=seed, **settings.to_dict()),
    )
    target = scheme.stratified if scheme.components else scheme.model
    if scheme.ring.is_dvr and not scheme.components:
        target = scheme.model.special_fibre()
    result.add("model", scheme.model.to_text())
    found = find_good_hypersurface(
        target,
        degree,
        settings.points,
        settings.samples,
        seed,
        method,
        settings.steps,
        debug,
        debug_log,
    )
    result.add("hypersurface", found.to_dict())
    result.conclude(POSITIVE)
    emit(result, fmt, report, force, debug)
    sys.exit(result.exit_code)
