from .experiments import (appendix_d_suite, convergence_check, hermiticity_check, inversion_check, product_integrand,
                          radii_region_suite, residue_experiment_11, self_adjointness_suite)
from .form import QuadratureSpec, gram_matrix, hermitian_form, star_conjugate, torus_mean
from .groundstate import (beta_gamma, factorization_check, factorization_residual, psi0, psi0_bar, ruijsenaars_w,
                          trig_gamma)
from .norms import NormReport, m0_suite, norm_formula_Nn, norm_formula_Nnm, orthogonality_suite
from .weights import CoincidentPoints, InvalidRadii, PoleError, radii_ok, weight_Delta_n, weight_Delta_nm
