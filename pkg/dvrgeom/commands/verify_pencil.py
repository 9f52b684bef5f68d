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
from dvrgeom.lefschetz import Pencil, is_lefschetz, verify_pencil_dvr
from dvrgeom.loader import open_scheme
from dvrgeom.polyparse import parse_polynomial
from dvrgeom.report import NEGATIVE, POSITIVE, UNDECIDABLE, Report, emit, file_inputs
from dvrgeom.utils import debug_log


@click.command("verify-pencil")
@debug_option
@force_option
@model_option
@click.option("--f0", required=True, help="First form of the pencil, e.g. x0.")
@click.option("--finf", required=True, help="Second form of the pencil, e.g. x1.")
@budget_options
@report_options
@exit_codes
def verify_pencil(model, f0, finf, budget, ext_bound, steps, fmt, report, force, debug):
    """
    Check the Lefschetz conditions for the pencil spanned by two forms.
    """
    scheme, text, settings = open_scheme(
        model, debug, points=budget, ext=ext_bound, steps=steps
    )
    names = scheme.names
    pencil = Pencil(
        parse_polynomial(f0, scheme.ring, names),
        parse_polynomial(finf, scheme.ring, names),
    )
    debug_log(f"Debug: verifying pencil {pencil}", debug)
    result = Report(
        "verify-pencil", file_inputs(model, text, f0=f0, finf=finf, **settings.to_dict())
    )
    result.add("model", scheme.model.to_text())
    result.add("pencil", pencil.to_text())
    if scheme.ring.is_dvr:
        verdict = verify_pencil_dvr(scheme.model, pencil, scheme.declared_coords, settings.ext,
                                    settings.points, settings.steps)
        result.add("result", verdict.to_dict())
        if not verdict.passed:
            result.conclude(NEGATIVE, verdict.failing)
        elif verdict.undecidable:
            result.conclude(UNDECIDABLE, "a critical member could not be classified")
        else:
            result.conclude(POSITIVE)
    else:
        verdict = is_lefschetz(scheme.model, pencil, settings.ext, scheme.declared_coords,
                               settings.points, settings.steps)
        result.add("result", verdict.to_dict())
        result.conclude(POSITIVE if verdict.passed else NEGATIVE, verdict.failing)
    emit(result, fmt, report, force, debug)
    sys.exit(result.exit_code)
