"""Zassenhaus-based expansions of cos(X+Y) and sin(X+Y) for non-commuting matrices."""
from .bounds import (BACKEND, BoundTable, Verdict, bound_tables, region_scan,
                     series_convergence_verdict)
from .lie import (NCPoly, LieExpr, X, Y, ad_apply, f1k, fnk, left_zassenhaus_terms,
                  nc_exp, nc_log, nc_mul, oracle_zassenhaus, to_ncpoly,
                  zassenhaus_terms)
from .matrix import (eval_lie_expr, mat_cos_sin, mat_exp, taylor_cos_sin,
                     two_norm_est)
from .trig import (FactorChain, TrigApproximation, generalized_identity_eval,
                   left_oriented_psi, numeric_c_terms, psi_recursive,
                   psi_sequence, psi_via_factored_z, symmetrized_cos,
                   zassenhaus_truncated_product)

__version__ = "0.1.0"
