"""Pipeline files, the regression suite and the ``geoforge`` command."""

from geoforge.cli.pipeline import OPERATIONS, PipelineResult, register_op, run_pipeline
from geoforge.cli.spec import PipelineSpec, load_pipeline_spec, parse_pipeline_spec
from geoforge.cli.suite import CRITERIA, SuiteResult, paper_suite, run_suite

__all__ = [
    "CRITERIA",
    "OPERATIONS",
    "PipelineResult",
    "PipelineSpec",
    "SuiteResult",
    "load_pipeline_spec",
    "paper_suite",
    "parse_pipeline_spec",
    "register_op",
    "run_pipeline",
    "run_suite",
]
