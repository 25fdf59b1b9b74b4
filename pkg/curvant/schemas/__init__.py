# curvant/schemas/__init__.py
"""
Pydantic Schemas Package

Value types shared by the geometry, solver, learning and harness modules,
and the configuration/report shapes that are read from and written to disk.
"""

from curvant.schemas.design import (
    VARIABLE_NAMES,
    DesignBounds,
    DesignVariables,
    TubeSpec,
    VariableBounds,
    preset_design,
)
from curvant.schemas.report import (
    AngularGrid,
    ComplexImpedance,
    EMReportSummary,
    SweepPoint,
)
from curvant.schemas.run import (
    RLConfig,
    RunConfig,
    RunMetrics,
    SolverConfig,
    SuccessRecord,
    ThetaMode,
)

__all__ = [
    "VARIABLE_NAMES",
    "DesignBounds",
    "DesignVariables",
    "TubeSpec",
    "VariableBounds",
    "preset_design",
    "AngularGrid",
    "ComplexImpedance",
    "EMReportSummary",
    "SweepPoint",
    "RLConfig",
    "RunConfig",
    "RunMetrics",
    "SolverConfig",
    "SuccessRecord",
    "ThetaMode",
]
