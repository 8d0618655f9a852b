"""The identity catalog and its runners."""

from .catalog import ANTINORMAL, BCH, CATALOG, SYMMETRY
from .engine import ALL_CHANNELS, ORACLE, REWRITER, SERIES
from .forms import phi_series, psi_series, uv_sequences
from ..parser import parse_expr, parse_relation
from .runner import IdentityCheck, make_check, run_check, run_identity, run_suite, transform_check

__all__ = [
    "ALL_CHANNELS",
    "ANTINORMAL",
    "BCH",
    "CATALOG",
    "ORACLE",
    "REWRITER",
    "SERIES",
    "SYMMETRY",
    "IdentityCheck",
    "make_check",
    "parse_expr",
    "parse_relation",
    "phi_series",
    "psi_series",
    "run_check",
    "run_identity",
    "run_suite",
    "transform_check",
    "uv_sequences",
]
