"""Certified high-precision Euler products prod_p f(1/p) via product decompositions of f."""
from .errors import (
    DomainError,
    ParseError,
    PlanError,
    PrimeProdError,
    RangeError,
    UnknownConstant,
    ValidationError,
    ValuationError,
    ZeroDivisor,
)
from .evaluate import CertifiedValue, EvaluationPlan, evaluate_constant, make_plan
from .funcs import ConstantSpec, builtin, parse, taylor
from .qseries import RationalSeries

__version__ = "0.1.0"
