import sys
import click
from dvrgeom.decorators.common_decorators import (
    debug_option,
    exit_codes,
    force_option,
    model_option,
    report_options,
)
from dvrgeom.exceptions import UnsupportedException
from dvrgeom.loader import open_scheme
from dvrgeom.polyparse import format_point, parse_point
from dvrgeom.quadsing import (
    ORDINARY_QUADRATIC,
    UNDECIDABLE,
    classify_field_point,
    classify_point,
    normalize,
)
from dvrgeom.report import NEGATIVE, POSITIVE, UNDECIDABLE as UNDECIDED, Report, emit, file_inputs
from dvrgeom.utils import debug_log


@click.command()
@debug_option
@force_option
@model_option
@click.option("--point", "-p", required=True, help="Point of the special fibre, e.g. (0:0:1).")
@click.option("--jet", type=int, required=False, help="Jet bound for coordinate changes.")
@report_options
@exit_codes
def classify(model, point, jet, fmt, report, force, debug):
    """
    Decide whether a point is an ordinary quadratic singularity and give
    its local model.
    """
    scheme, text, settings = open_scheme(model, debug, jet=jet)
    coords, _ = parse_point(point, scheme.residue_field)
    result = Report("classify", file_inputs(model, text, point=point, jet=settings.jet))
    result.add("model", scheme.model.to_text())
    result.add("point", format_point(coords, scheme.residue_field))
    if scheme.ring.is_dvr:
        verdict = classify_point(scheme.model, coords, settings.jet)
    else:
        verdict = classify_field_point(scheme.model, coords, settings.jet)
    debug_log(f"Debug: verdict {verdict.kind}", debug)
    result.add("classification", verdict.to_dict())
    result.add("summary", verdict.summary())
    if verdict.local_model is not None:
        try:
            result.add("normalized", normalize(verdict.local_model).to_text())
        except UnsupportedException as e:
            result.add("normalized", f"unavailable: {e.details}")
    if verdict.kind == ORDINARY_QUADRATIC:
        result.conclude(POSITIVE)
    elif verdict.kind == UNDECIDABLE:
        result.conclude(UNDECIDED)
    else:
        result.conclude(NEGATIVE)
    emit(result, fmt, report, force, debug)
    sys.exit(result.exit_code)
