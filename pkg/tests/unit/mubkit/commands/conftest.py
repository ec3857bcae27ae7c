import pytest

from mubkit.commands import main


@pytest.fixture
def run_cli(capsys):
    """Run main() and return (exit code, stdout, stderr)."""

    def _run(*argv: str):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run
