"""Exact degrees of determinant line bundles (CM, Chow, Hilbert) for polarised
families over a curve."""
from .exactalg import BiPoly, RationalFunctionEps, UniPoly
from .family import (
    BlowupFamily,
    FamilyData,
    MultisectionSpec,
    blowup,
    fibred_product,
    proj_bundle,
    scale,
    section_of_summand,
    twist,
)
from .lines import cm_degree, cm_prime_degree, lambda_vector, mu, sigma_blowup

__version__ = "0.1.0"
