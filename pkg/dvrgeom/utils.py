import hashlib
from itertools import product
import click


def debug_log(message, debug):
    """
    Print message to stderr only if debug is true

    :param message: message to print
    :param debug: flag to turn debug mode on
    :return: None
    """
    if debug:
        click.echo(message, err=True)


def warn(message):
    """
    Print a highlighted warning to stderr.

    :param message: warning text.
    """
    click.echo(click.style(f"⚠️  Warning: {message}", fg="yellow"), err=True)


def compute_sha256(data: str) -> str:
    """
    Compute SHA-256 hash of the given data.

    :param data: Input data as a string.
    :return: SHA-256 hash as a hex string.
    """
    return hashlib.sha256(data.encode()).hexdigest()


def canonical_tuples(size, values, one=1):
    """
    Yield every tuple of ``size`` entries drawn from ``values`` whose first
    nonzero entry equals ``one``, in lexicographic order.

    :param size: tuple length.
    :param values: raw field values in ascending order, starting with 0.
    :param one: raw value of the multiplicative identity.
    """
    for lead in range(size - 1, -1, -1):
        prefix = (0,) * lead + (one,)
        for tail in product(values, repeat=size - lead - 1):
            yield prefix + tail


def projective_count(q, size):
    """Number of points of projective space with ``size`` homogeneous coordinates."""
    return (q**size - 1) // (q - 1)
