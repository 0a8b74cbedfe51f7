"""Which n make x^n - 1 have a divisor of every degree, over Z and over F_p.

Classifiers for practical, phi-practical, lambda-practical, p-practical,
weakly phi-practical, 2-dense and strictly 2-dense integers, a census
engine for their counting functions, and brute-force oracles that check
the fast decision procedures.
"""

from .classify import (
    ClassificationRecord,
    classify,
    is_2_dense,
    is_lambda_practical,
    is_p_practical,
    is_phi_practical,
    is_practical,
    is_strictly_2_dense,
    is_weakly_phi_practical,
)
from .degsets import (
    DegreeMultiset,
    covers_all_bitset,
    covers_all_fast,
    lambda_multiset,
    p_multiset,
    phi_multiset,
)
from .factorint import FactoredInteger, carmichael_lambda, divisors, euler_phi, factorize, sigma
from .orders import ell_star, lambda_witness, mult_order, one_mod_n_prime

__version__ = "0.1.0"

__all__ = [
    "ClassificationRecord",
    "DegreeMultiset",
    "FactoredInteger",
    "carmichael_lambda",
    "classify",
    "covers_all_bitset",
    "covers_all_fast",
    "divisors",
    "ell_star",
    "euler_phi",
    "factorize",
    "is_2_dense",
    "is_lambda_practical",
    "is_p_practical",
    "is_phi_practical",
    "is_practical",
    "is_strictly_2_dense",
    "is_weakly_phi_practical",
    "lambda_multiset",
    "lambda_witness",
    "mult_order",
    "one_mod_n_prime",
    "p_multiset",
    "phi_multiset",
    "sigma",
]
