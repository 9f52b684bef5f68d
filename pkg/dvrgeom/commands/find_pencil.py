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
from dvrgeom.lefschetz import find_pencil as find_field_pencil, find_pencil_dvr
from dvrgeom.loader import open_scheme
from dvrgeom.report import POSITIVE, UNDECIDABLE, Report, emit, file_inputs
from dvrgeom.utils import debug_log


@click.command("find-pencil")
@debug_option
@force_option
@model_option
@click.option("--d", "degree", type=int, default=1, show_default=True,
              help="Degree of the member forms.")
@click.option("--ell", type=int, default=2, show_default=True,
              help="Prime whose power degrees are tried as extensions.")
@click.option("--max-ext", type=int, default=0, show_default=True,
              help="Largest exponent j of the extension degree ell^j.")
@click.option("--candidates", type=int, required=False,
              help="Maximum pencils tried per extension level.")
@budget_options
@report_options
@exit_codes
def find_pencil(model, degree, ell, max_ext, candidates, budget, ext_bound, steps, fmt, report,
                force, debug):
    """
    Find a Lefschetz pencil, allowing the declared ordinary quadratic
    points; over a DVR the pencil also has ordinary quadratic reduction.
    """
    scheme, text, settings = open_scheme(
        model, debug, points=budget, ext=ext_bound, steps=steps
    )
    result = Report(
        "find-pencil",
        file_inputs(model, text, d=degree, ell=ell, max_ext=max_ext, candidates=candidates,
                    **settings.to_dict()),
    )
    result.add("model", scheme.model.to_text())
    result.add("declared", [p.to_text(scheme.residue_field) for p in scheme.oq_points])
    search = find_pencil_dvr if scheme.ring.is_dvr else find_field_pencil
    found = search(
        scheme.model,
        degree,
        ell,
        max_ext,
        scheme.declared_coords,
        settings.ext,
        settings.points,
        candidates,
        settings.steps,
        debug,
        debug_log,
    )
    result.add("search", found.to_dict())
    if scheme.ring.is_dvr and found.undecidable:
        result.conclude(UNDECIDABLE, "a critical member could not be classified")
    else:
        result.conclude(POSITIVE)
    emit(result, fmt, report, force, debug)
    sys.exit(result.exit_code)
