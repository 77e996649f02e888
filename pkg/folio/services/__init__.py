"""
Service layer initialization.
"""

from folio.services.engine_service import bounded_var_eval, fpt_model_check, run_engine
from folio.services.normalize_service import lay, nnf, organize
from folio.services.semantics_service import naive_eval
from folio.services.syntax_service import parse_formula, print_formula
from folio.services.thickness_service import analyze, minimize_variables, thickness

__all__ = [
    "analyze",
    "bounded_var_eval",
    "fpt_model_check",
    "lay",
    "minimize_variables",
    "naive_eval",
    "nnf",
    "organize",
    "parse_formula",
    "print_formula",
    "run_engine",
    "thickness",
]
