import os
import shutil
import tempfile
from pathlib import Path
import pytest
from click.testing import CliRunner

MOCK_DIR = Path(__file__).parent / "mock"


@pytest.fixture
def runner():
    """
    Fixture for Click CLI Runner.
    Provides an isolated CLI runner instance for each test.
    """
    return CliRunner()


@pytest.fixture
def isolated_mock_files():
    """
    Provide isolated mock files in a temporary directory for each test.
    Prevents modification of the original mock files.
    """
    with tempfile.TemporaryDirectory() as temp_dir:
        temp_dir_path = Path(temp_dir)

        # Copy all mock files to the temporary directory
        for file in MOCK_DIR.iterdir():
            if file.is_file():
                shutil.copy(file, temp_dir_path / file.name)

        yield temp_dir_path
        # Cleanup is handled automatically by TemporaryDirectory


@pytest.fixture
def mock_dir():
    """Read-only location of the mock scheme files."""
    return MOCK_DIR


@pytest.fixture(autouse=True)
def clean_settings_env(monkeypatch):
    """Keep DVRGEOM_* variables of the calling shell out of the tests."""
    for key in list(os.environ):
        if key.startswith("DVRGEOM_"):
            monkeypatch.delenv(key, raising=False)
