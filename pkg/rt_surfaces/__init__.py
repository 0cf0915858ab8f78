"""Construct and verify RT-surfaces from holomorphic Weierstrass data."""
from __future__ import annotations

from .exceptions import (
    ConsistencyError,
    DegenerateGaussMap,
    DegenerateGrid,
    EmptyMesh,
    EvalError,
    EvalErrorKind,
    ExpressionSyntaxError,
    InvalidGrid,
    RTSurfaceError,
    SingularPoint,
    UnsupportedFunction,
)
from .expression import eval_jet2, parse, print_expr
from .jet import Jet2
from .models import (
    GeneratorPair,
    GridSpec,
    MeshBuffer,
    ReportRow,
    RotationParams,
    SurfaceJet,
    Thresholds,
    VerifyTolerances,
)
from .sampler import sample
from .weierstrass import evaluate

__all__ = [
    "ConsistencyError",
    "DegenerateGaussMap",
    "DegenerateGrid",
    "EmptyMesh",
    "EvalError",
    "EvalErrorKind",
    "ExpressionSyntaxError",
    "GeneratorPair",
    "GridSpec",
    "InvalidGrid",
    "Jet2",
    "MeshBuffer",
    "RTSurfaceError",
    "ReportRow",
    "RotationParams",
    "SingularPoint",
    "SurfaceJet",
    "Thresholds",
    "UnsupportedFunction",
    "VerifyTolerances",
    "eval_jet2",
    "evaluate",
    "parse",
    "print_expr",
    "sample",
]
