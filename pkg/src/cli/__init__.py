"""
Command-line layer: run configuration, commands, verification suites and plot data.
"""

from .commands import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, CommandRunner
from .config import RunConfig
from .suites import SUITES, SuiteResult, SuiteRunner
from .viz import VizBundle, VizRecord, build_bundle

__all__ = [
    "EXIT_CHECK_FAILED",
    "EXIT_INPUT_ERROR",
    "EXIT_OK",
    "SUITES",
    "CommandRunner",
    "RunConfig",
    "SuiteResult",
    "SuiteRunner",
    "VizBundle",
    "VizRecord",
    "build_bundle",
]
