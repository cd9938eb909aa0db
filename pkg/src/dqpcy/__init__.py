"""Exact verification of double quasi-Poisson brackets and their A-infinity structures."""

__version__ = "0.1.0"

from .exact_arith import (CCoeffTable, bernoulli, binomial, c_coeff, format_rational,
                          parse_rational)
from .algebra import (Algebra, MixedTuple, dual_action, m2_phi, mul, natural_form,
                      permute_graded, truncated_polynomial_algebra, validate_algebra)
from .double_bracket import (DoubleBracket, check_db1, check_db2, e3_closed_form,
                             e_derivation, eval_bracket, is_double_poisson,
                             is_quasi_poisson, monogenic_bracket, mu_e3_bracket,
                             triple_bracket)
from .ainfty import (AInfinityStructure, CanonicalSplit, b_bar, canonicalize_cycle, ev,
                     is_acceptable, is_good, m4_closed_form, script_m)
from .stasheff import (SIReport, si_basis, si_gamma, verify_cyclic_reduction,
                       verify_cyclicity, verify_pcy, verify_si)
from .identities import (check_ide, check_maincomp, mu_reduced, residual_bcm,
                         residual_cgen, script_e)
from .io import AlgebraFile, InputError, load_bundled, load_file
from .report import CheckReport

__all__ = [name for name in dir() if not name.startswith("_")]
