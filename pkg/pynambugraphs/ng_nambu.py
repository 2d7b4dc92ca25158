"""
Nambu-determinant Poisson bivectors

    {f, g} = rho * det(df, dg, da^1, ..., da^{d-2})

written as P = rho * sum_{i<j} eps^{ij k...} a^1_k ... a^{d-2}_l xi_i xi_j.
"""
from typing import Dict, Union

from .ng_jetring import DiffPolynomial, JetRing, Monomial, SUPPORTED_DIMENSIONS
from .ng_morphism import levi_civita_terms
from .ng_multivector import Multivector, schouten_bracket
from .py_ng_exceptions import NGJacobiException, NGUnsupportedDimensionException


class NambuBivector:
    """
    The Poisson bivector of a density rho and Casimirs a^1..a^{d-2}.

    Construction checks [[P, P]] = 0 unless certify=False.
    """

    def __init__(self, dimension: int, ring: JetRing = None, certify: bool = True):
        if dimension not in SUPPORTED_DIMENSIONS:
            raise NGUnsupportedDimensionException(dimension)
        if ring is None:
            ring = JetRing(dimension)
        self.dimension = dimension
        self.ring = ring
        self.multivector = _nambu_components(dimension, ring)
        if certify and not self.jacobiator().is_zero():
            raise NGJacobiException(dimension)

    def jacobiator(self) -> Multivector:
        return schouten_bracket(self.multivector, self.multivector)

    def differential(self, other: Multivector) -> Multivector:
        return schouten_bracket(self.multivector, other)

    def __str__(self):
        return str(self.multivector)


def _nambu_components(dimension: int, ring: JetRing) -> Multivector:
    rho = ring.rho()
    components: Dict[tuple, DiffPolynomial] = {}
    for sigma, sign in levi_civita_terms(dimension):
        i, j = sigma[0], sigma[1]
        if i > j:
            continue
        term = rho.scale(sign)
        for species, coord in enumerate(sigma[2:], start=1):
            multi_index = [0] * dimension
            multi_index[coord] = 1
            term = term * ring.casimir(species, multi_index)
        key = (i, j)
        components[key] = components[key] + term if key in components else term
    return Multivector(dimension, components, ring=ring)


def nambu_bivector(dimension: int, ring: JetRing = None) -> NambuBivector:
    return NambuBivector(dimension, ring=ring)


def lichnerowicz_differential(poisson: Union[NambuBivector, Multivector],
                              multivector: Multivector) -> Multivector:
    """
    d_P(A) = [[P, A]]
    """
    if isinstance(poisson, NambuBivector):
        poisson = poisson.multivector
    return schouten_bracket(poisson, multivector)


def swap_casimir_species(multivector: Multivector) -> Multivector:
    """
    Exchange the fields a^1 and a^2 in every coefficient (d = 4)
    """
    ring = multivector.ring
    components = {}
    for key, poly in multivector.components().items():
        terms = {}
        for monomial, coeff in poly.terms():
            factors = tuple(sorted(
                variable._replace(field=3 - variable.field) if variable.field in (1, 2) else variable
                for variable in monomial.factors))
            terms[Monomial(factors, monomial.base_factors)] = coeff
        components[key] = DiffPolynomial(ring, terms)
    return Multivector(multivector.dimension, components, ring=ring)
