"""Utility scripts for running development tasks through Poetry.

Each script runs its command in a subprocess with ``src`` on ``PYTHONPATH``, so the flat
packages (``network``, ``measures``, ...) import the same way they do in the CLI and tests.
"""

import os
import signal
import subprocess
import sys
from contextlib import suppress
from pathlib import Path


def run_command(command: list[str]) -> int:
    """Run a command in a subprocess with proper environment setup and signal handling.

    Args:
    ----
        command (list[str]): The command to run as a list of strings.

    Returns:
    -------
        int: The exit code of the command.

    """
    env = os.environ.copy()
    env["PYTHONPATH"] = str(Path(__file__).parent.resolve())
    process = subprocess.Popen(command, env=env)
    try:
        process.communicate()
    except KeyboardInterrupt:
        if sys.platform == "win32":
            process.send_signal(signal.CTRL_C_EVENT)
        else:
            process.send_signal(signal.SIGINT)
    finally:
        with suppress(ProcessLookupError):
            process.terminate()
            process.wait(timeout=5)
            if process.poll() is None:
                process.kill()
    return process.returncode


def lint() -> None:
    """Run the 'ruff check' and 'ruff format' command using Poetry."""
    run_command(["poetry", "run", "ruff", "check"])
    run_command(["poetry", "run", "ruff", "format"])


def test() -> None:
    """Run the test suite, forwarding any extra arguments to pytest."""
    sys.exit(run_command(["poetry", "run", "pytest", *sys.argv[1:]]))


def verify() -> None:
    """Run the oracle cross-check suites in quick mode."""
    sys.exit(run_command(["poetry", "run", "python", "src/app.py", "verify", "--quick"]))


def cli() -> None:
    """Run the netcloak command line, forwarding every argument."""
    sys.exit(run_command(["poetry", "run", "python", "src/app.py", *sys.argv[1:]]))


def dev() -> None:
    """Run lint and the tests in sequence."""
    run_command(["poetry", "run", "lint"])
    sys.exit(run_command(["poetry", "run", "test"]))
