import json
import os
from pathlib import Path
import click
from dvrgeom.constants import (
    EXIT_INPUT_ERROR,
    EXIT_NEGATIVE,
    EXIT_POSITIVE,
    EXIT_UNDECIDABLE,
)
from dvrgeom.utils import compute_sha256, debug_log, warn
from dvrgeom.validation import check_output_not_exists

POSITIVE = "positive"
NEGATIVE = "negative"
UNDECIDABLE = "undecidable"
INPUT_ERROR = "input-error"

EXIT_CODES = {
    POSITIVE: EXIT_POSITIVE,
    NEGATIVE: EXIT_NEGATIVE,
    UNDECIDABLE: EXIT_UNDECIDABLE,
    INPUT_ERROR: EXIT_INPUT_ERROR,
}

TEXT = "text"
JSON = "json"


class Report:
    """
    Ordered key/value report of one command run.

    Keys keep insertion order in both renderings, so identical inputs give
    byte-identical output.
    """

    def __init__(self, command, inputs=None):
        self.command = command
        self.sections = {"command": command, "inputs": dict(inputs or {})}
        self.outcome = None

    def add(self, key, value):
        self.sections[key] = value
        return self

    def conclude(self, outcome, message=""):
        if outcome not in EXIT_CODES:
            raise ValueError(f"Unknown outcome: {outcome}")
        self.outcome = outcome
        self.sections["verdict"] = outcome
        if message:
            self.sections["message"] = message
        return self

    @property
    def exit_code(self):
        return EXIT_CODES[self.outcome or UNDECIDABLE]

    def to_text(self):
        return "\n".join(_render(self.sections, 0)) + "\n"

    def to_json(self):
        return json.dumps(self.sections, indent=2, ensure_ascii=False) + "\n"

    def render(self, fmt=TEXT):
        return self.to_json() if fmt == JSON else self.to_text()


def _scalar(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _render(value, depth):
    pad = "  " * depth
    lines = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_render(item, depth + 1))
            elif isinstance(item, (dict, list)):
                lines.append(f"{pad}{key}: -")
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return lines
    for item in value:
        if isinstance(item, dict) and item:
            nested = _render(item, depth + 1)
            lines.append(f"{pad}- {nested[0].lstrip()}")
            lines.extend(nested[1:])
        elif isinstance(item, list) and item:
            lines.append(f"{pad}-")
            lines.extend(_render(item, depth + 1))
        else:
            lines.append(f"{pad}- {_scalar(item)}")
    return lines


def file_inputs(path, text, **options):
    """Echo of a scheme file input: its name and SHA-256, then the options."""
    inputs = {"file": Path(path).name, "sha256": compute_sha256(text)}
    inputs.update(options)
    return inputs


def emit(report, fmt=TEXT, output=None, force=False, debug=False):
    """
    Print the report, or write it to ``output``.

    :raises OutputFileExistsException: ``output`` exists and ``force`` is off.
    """
    rendered = report.render(fmt)
    if not output:
        click.echo(rendered, nl=False)
        return
    if not force:
        check_output_not_exists(output)
    elif os.path.exists(output):
        warn(f"Overwriting existing file {output} (--force used).")
    debug_log(f"Debug: writing report to {output}", debug)
    with open(output, "w", encoding="utf-8") as f:
        f.write(rendered)
    click.echo(f"Report saved to {output}")
