from operadic.cli.commands import COMMANDS, EXIT_INPUT, EXIT_OK, EXIT_VIOLATED, run
from operadic.cli.config import DefaultSessionConfig, QuickSessionConfig, SessionConfig, parse_window
from operadic.cli.inputs import InputBundle, parse_input
from operadic.cli.report import DEGREE_SHIFT, SCHEMA_VERSION, Report

__all__ = [
    "COMMANDS",
    "DEGREE_SHIFT",
    "DefaultSessionConfig",
    "EXIT_INPUT",
    "EXIT_OK",
    "EXIT_VIOLATED",
    "InputBundle",
    "QuickSessionConfig",
    "Report",
    "SCHEMA_VERSION",
    "SessionConfig",
    "parse_input",
    "parse_window",
    "run",
]
