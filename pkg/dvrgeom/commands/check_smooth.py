import sys
import click
from dvrgeom.decorators.common_decorators import (
    budget_options,
    debug_option,
    exit_codes,
    force_option,
    method_option,
    model_option,
    report_options,
)
from dvrgeom.loader import open_scheme
from dvrgeom.report import NEGATIVE, POSITIVE, Report, emit, file_inputs
from dvrgeom.smoothness import check_snc, generic_fibre_certificate, is_smooth
from dvrgeom.utils import debug_log, warn


@click.command("check-smooth")
@debug_option
@force_option
@model_option
@method_option
@budget_options
@report_options
@exit_codes
def check_smooth(model, method, budget, ext_bound, steps, fmt, report, force, debug):
    """
    Certify smoothness of a model over a field, or of both fibres of a
    model over a truncated DVR.
    """
    scheme, text, settings = open_scheme(
        model, debug, points=budget, ext=ext_bound, steps=steps
    )
    scheme_model = scheme.model
    result = Report(
        "check-smooth",
        file_inputs(model, text, method=method, **settings.to_dict()),
    )
    result.add("model", scheme_model.to_text())
    options = {
        "method": method,
        "ext_bound": settings.ext,
        "budget": settings.points,
        "step_budget": settings.steps,
        "debug": debug,
        "debug_log": debug_log,
    }
    if not scheme.ring.is_dvr:
        certificate = is_smooth(scheme_model, **options)
        result.add("certificate", certificate.to_dict())
        result.conclude(POSITIVE if certificate.is_smooth else NEGATIVE)
        emit(result, fmt, report, force, debug)
        sys.exit(result.exit_code)

    debug_log("Debug: model over a DVR, checking both fibres.", debug)
    if not scheme.proper:
        warn("Model not declared proper; fibre checks are quasi-projective in scope.")
    special = is_smooth(scheme_model.special_fibre(), **options)
    generic = generic_fibre_certificate(scheme_model, settings.steps)
    result.add("special_fibre", special.to_dict())
    result.add("generic_fibre", generic.to_dict())
    if scheme.components:
        snc = check_snc(list(scheme.component_models), method=method,
                        step_budget=settings.steps)
        result.add("components_snc", snc.to_dict())
    good = special.is_smooth and generic.is_smooth
    result.add("good_reduction", good)
    result.conclude(POSITIVE if good else NEGATIVE)
    emit(result, fmt, report, force, debug)
    sys.exit(result.exit_code)
