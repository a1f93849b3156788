"""Coefficients of Frobenius series whose terms obey m-term recurrences.

Three independent routes to the same coefficients are provided for
three-term recurrences: forward recursion (:mod:`.recurrence`), explicit
enumeration of product terms (:mod:`.census`) and closed-form sub-series
sums (:mod:`.closed_form`).  In exact mode they agree to the last digit.
"""

from .catalog import (CatalogEntry, LameParams, catalog_specs, generating_reference,
                      get_entry, lame_rules, lame_spec, two_term_series)
from .census import SymbolicTerm, TermList, count_terms, enumerate_terms, evaluate_terms
from .closed_form import (SubSeriesTable, TerminationProfile, TerminationReport,
                          assemble_coefficients, subseries_infinite, subseries_limit_form,
                          subseries_literal, subseries_polynomial, subseries_tables,
                          trf_expand, verify_termination)
from .errors import (ArityError, CapExceeded, ConfigError, DomainError, IncompleteCoverage,
                     ProfileOrderError, RuleEvaluationError, SeedError, TerminationViolation,
                     TrfError)
from .evaluate import (EvalRequest, convergence_report, eval_partial, eval_subseries_split,
                       partial_sums)
from .recurrence import (APPROX, EXACT, CoefficientRule, CoefficientSequence, RecurrenceSpec,
                         SeedRule, direct_expand, make_spec, ratio_sequence,
                         recurrence_residuals, seed_coefficients)

__version__ = "0.1.0"
