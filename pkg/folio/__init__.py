"""
folio: thickness analysis, variable-minimizing rewriting and bounded-variable
model checking for relational first-order sentences.
"""

__version__ = "1.0.0"
