from pathlib import Path
from dvrgeom.exceptions import (
    InvalidSettingException,
    OutputFileExistsException,
    SchemeFileNotFoundException,
)


def check_positive(value, name="value"):
    """Check that a budget or bound is a positive integer and return it."""
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise InvalidSettingException(details=f"{name} must be a positive integer, got {value!r}")
    return value


def check_file_exists(file_path: str):
    """Check if a scheme file exists."""
    if not Path(file_path).is_file():
        raise SchemeFileNotFoundException(details=f"File not found: {file_path}")


def check_output_not_exists(output_path: str):
    """Check if a report file does not already exist."""
    if Path(output_path).exists():
        raise OutputFileExistsException(
            details=f"Output path already exists: {output_path}"
        )
