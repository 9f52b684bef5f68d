import functools
import sys
import click
from dvrgeom.constants import EXIT_INPUT_ERROR, EXIT_UNDECIDABLE
from dvrgeom.exceptions import (
    AlgebraException,
    ArityMismatchException,
    ExhaustedException,
    InvalidHyperplaneException,
    InvalidLocalModelException,
    InvalidPencilException,
    InvalidRingException,
    NotHypersurfaceException,
    PointNotOnFibreException,
    RingMismatchException,
    SchemeFileException,
)
from dvrgeom.report import JSON, TEXT
from dvrgeom.smoothness import METHODS

# Algebra errors caused by what the user wrote rather than by the computation
INPUT_ERRORS = (
    ArityMismatchException,
    InvalidHyperplaneException,
    InvalidLocalModelException,
    InvalidPencilException,
    InvalidRingException,
    NotHypersurfaceException,
    PointNotOnFibreException,
    RingMismatchException,
)


def debug_option(func):
    """
    Add a `--debug` flag to a Click command.
    """
    return click.option(
        "--debug", is_flag=True, help="Enable debug mode for detailed logs on stderr."
    )(func)


def force_option(func):
    """
    Add a `--force` flag to a Click command.
    """
    return click.option(
        "--force",
        is_flag=True,
        help="Force overwrite of an existing report file.",
    )(func)


def model_option(func):
    """
    Add a required `--model` scheme file option.
    """
    return click.option(
        "--model",
        "-m",
        required=True,
        help="Path to the scheme file (.scheme, .yaml, .yml or .json).",
    )(func)


def report_options(func):
    """
    Add `--format` and `--report` options for report output.
    """
    func = click.option(
        "--report",
        "-o",
        required=False,
        help="Path to save the report instead of printing it.",
    )(func)
    return click.option(
        "--format",
        "fmt",
        type=click.Choice([TEXT, JSON]),
        default=TEXT,
        show_default=True,
        help="Report format.",
    )(func)


def method_option(func):
    """
    Add a `--method` option choosing the smoothness oracle.
    """
    return click.option(
        "--method",
        type=click.Choice(list(METHODS)),
        default=METHODS[0],
        show_default=True,
        help="Groebner certificate, exhaustive enumeration, or both with agreement.",
    )(func)


def budget_options(func):
    """
    Add `--budget`, `--ext-bound` and `--steps` overrides of the settings.
    """
    func = click.option(
        "--steps", type=int, required=False, help="Groebner critical-pair budget."
    )(func)
    func = click.option(
        "--ext-bound", type=int, required=False, help="Extension degree bound for enumeration."
    )(func)
    return click.option(
        "--budget", type=int, required=False, help="Maximum points or forms per scan."
    )(func)


def seed_option(func):
    """
    Add a `--seed` option for commands that may sample.
    """
    return click.option(
        "--seed", type=int, required=False, help="Seed for random sampling."
    )(func)


def exit_codes(func):
    """
    Turn library errors into the exit-code contract: 3 for input errors,
    2 for undecidable, budget, precision and exhausted searches.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SchemeFileException as e:
            click.echo(str(e), err=True)
            sys.exit(EXIT_INPUT_ERROR)
        except INPUT_ERRORS as e:
            click.echo(str(e), err=True)
            sys.exit(EXIT_INPUT_ERROR)
        except ExhaustedException as e:
            click.echo(str(e), err=True)
            for key, value in e.statistics.items():
                click.echo(f"{key}: {value}", err=True)
            sys.exit(EXIT_UNDECIDABLE)
        except AlgebraException as e:
            click.echo(str(e), err=True)
            sys.exit(EXIT_UNDECIDABLE)

    return wrapper
