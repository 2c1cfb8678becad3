"""Command-line front end: instance files, pipeline reports, and the ``doubleplane`` command."""

from .instance import InstanceError, InstanceFile, ModuleFile, emit_instance, parse_instance, parse_module
from .pipeline import (deterministic_part, emit_report, parse_report, random_instance, run_from_module,
                       run_rao, run_random, run_resolve, run_verify)

__all__ = [
    "InstanceError", "InstanceFile", "ModuleFile", "emit_instance", "parse_instance", "parse_module",
    "deterministic_part", "emit_report", "parse_report", "random_instance", "run_from_module",
    "run_rao", "run_random", "run_resolve", "run_verify",
]
