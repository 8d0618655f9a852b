"""Normal ordering of two generators under a commutation rule.

The core objects are :class:`~ncorder.ncalg.NCPoly` (polynomials in A and B
kept in canonical form), :class:`~ncorder.ncalg.Algebra` (a relation
``[B, A] = ...`` together with a basis) and :class:`~ncorder.series.TSeries`
(truncated power series in t over the algebra).  ``ncorder.verify`` holds
the identity catalog and ``ncorder.cli`` the command line.
"""

from .combinat import UniPoly
from .errors import (
    ConstantTermError,
    ExponentKindError,
    ExpressionSyntaxError,
    MissingBinding,
    NCOrderError,
    NoNormalForm,
    NotTransformable,
    PoleAtEnv,
    UnknownCheck,
)
from .ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation, l_map, normal_order
from .report import Failure, Report
from .scalars import ParamRat, ParamSpace, default_space
from .series import ASeries, TSeries

__version__ = "0.1.0"

__all__ = [
    "LEFT",
    "RIGHT",
    "ASeries",
    "Algebra",
    "ConstantTermError",
    "ExponentKindError",
    "ExpressionSyntaxError",
    "Failure",
    "MissingBinding",
    "NCOrderError",
    "NCPoly",
    "NoNormalForm",
    "NotTransformable",
    "ParamRat",
    "ParamSpace",
    "PoleAtEnv",
    "Relation",
    "Report",
    "TSeries",
    "UniPoly",
    "UnknownCheck",
    "default_space",
    "l_map",
    "normal_order",
]
