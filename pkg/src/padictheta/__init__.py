"""Exact p-adic computer algebra for theta-algebras, Mahler expansions,
modular-form q-expansions, and procyclic group cohomology, with a
verification CLI over a registry of named identity checks."""

from .errors import (BaseNotInvertible, IncompleteSampleWindow, LevelCapExceeded,
                     MissingGolden, NonTerminating, NotAUnit, NotDivisible,
                     NotIntegral, OutsideDomain, PadicError, PrecisionExhausted,
                     PrimeMismatch, UnknownCheck, WindowTooSmall)
from .padic import (PadicInt, from_int, one, padic_binomial, padic_log,
                    teichmuller_digits, teichmuller_lift, vp_factorial, vp_int, zero)
from .poly import Generator, GeneratorRegistry, SparsePoly, rewrite_closure
from .theta import (AdamsMap, CoproductMap, ThetaElement, ThetaPresentation,
                    adams_action, comultiply, counit, ell_relation_check,
                    f_congruence_check, psi_p, theta_level, theta_op,
                    unit_power_series, working_precision, x_congruence_check)
from .lam import (LambdaContext, cartan_product, lambda_list, lambda_n,
                  lambda_scalar, lambda_scalar_newton, leaky_psi)
from .mahler import (MahlerFn1, MahlerFn2, antidiagonal_check, from_digit_poly,
                     from_samples, hopf_antipode, hopf_coproduct, hopf_counit,
                     hopkins_mistake_check, pi_bn, pi_map, section_s, to_digit_poly)
from .qseries import (QSeries, b_series, compose, discriminant, eisenstein_e4,
                      eisenstein_e6, express_in_base, f_series, frobenius,
                      j_inverse, log_one_unit, theta_on_series)
from .cohomology import (CyclicAction, cohomology, h0_h1, ko_preset,
                         smith_normal_form)

__version__ = "0.1.0"
