import sys
import click
from dvrgeom.bertini import certify_snc_divisor, find_good_hyperplane, is_good_hyperplane
from dvrgeom.decorators.common_decorators import (
    budget_options,
    debug_option,
    exit_codes,
    force_option,
    method_option,
    model_option,
    report_options,
)
from dvrgeom.exceptions import UnsupportedException
from dvrgeom.loader import open_scheme
from dvrgeom.report import NEGATIVE, POSITIVE, Report, emit, file_inputs
from dvrgeom.utils import debug_log


@click.command("find-hyperplane")
@debug_option
@force_option
@model_option
@method_option
@budget_options
@click.option("--ell", type=int, default=2, show_default=True,
              help="Prime whose power degrees are tried as extensions.")
@click.option("--max-ext", type=int, default=0, show_default=True,
              help="Largest exponent j of the extension degree ell^j.")
@report_options
@exit_codes
def find_hyperplane(model, method, budget, ext_bound, steps, ell, max_ext, fmt, report, force,
                    debug):
    """
    Find a hyperplane over the DVR whose section is good with respect to
    the declared components of the special fibre.
    """
    scheme, text, settings = open_scheme(
        model, debug, points=budget, ext=ext_bound, steps=steps
    )
    if not scheme.ring.is_dvr:
        raise UnsupportedException(details="find-hyperplane needs a model over a truncated DVR")
    result = Report(
        "find-hyperplane",
        file_inputs(model, text, method=method, ell=ell, max_ext=max_ext, **settings.to_dict()),
    )
    stratified = scheme.stratified
    result.add("model", stratified.model.to_text())
    result.add("components", [c.to_text() for c in stratified.components])
    search = find_good_hyperplane(
        stratified, ell, max_ext, method, settings.points, settings.steps, debug, debug_log
    )
    result.add("search", search.to_dict())
    result.add("good_hyperplanes", [h.to_text() for h in search.good])

    debug_log("Debug: re-verifying the chosen hyperplane.", debug)
    current = stratified.base_change(search.degree)
    verdict = is_good_hyperplane(current, search.hyperplane, method, settings.steps)
    snc = certify_snc_divisor(current, search.hyperplane, method=method,
                              step_budget=settings.steps)
    result.add("verification", verdict.to_dict())
    result.add("snc_with_special_fibre", snc.to_dict())
    result.conclude(POSITIVE if verdict.good and snc.passed else NEGATIVE)
    emit(result, fmt, report, force, debug)
    sys.exit(result.exit_code)
