import sys
import click
from dvrgeom.decorators.common_decorators import (
    budget_options,
    debug_option,
    exit_codes,
    force_option,
    model_option,
    report_options,
)
from dvrgeom.exceptions import UnsupportedException
from dvrgeom.lefschetz import dual_table as tabulate
from dvrgeom.loader import open_scheme
from dvrgeom.report import POSITIVE, Report, emit, file_inputs
from dvrgeom.utils import debug_log


@click.command("dual-table")
@debug_option
@force_option
@model_option
@click.option("--d", "degree", type=int, default=1, show_default=True,
              help="Degree of the section forms.")
@budget_options
@report_options
@exit_codes
def dual_table(model, degree, budget, ext_bound, steps, fmt, report, force, debug):
    """
    Tabulate the tangency status of every degree-d section of a variety
    over a finite field.
    """
    scheme, text, settings = open_scheme(
        model, debug, points=budget, ext=ext_bound, steps=steps
    )
    if scheme.ring.is_dvr:
        raise UnsupportedException(details="dual-table needs a variety over a finite field")
    result = Report("dual-table", file_inputs(model, text, d=degree, **settings.to_dict()))
    table = tabulate(scheme.model, degree, settings.ext, settings.points, settings.steps, debug,
                     debug_log)
    result.add("table", table.to_dict())
    result.conclude(POSITIVE)
    emit(result, fmt, report, force, debug)
    sys.exit(result.exit_code)
