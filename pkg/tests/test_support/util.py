import json
import random
from hashlib import sha256
from typing import List

from pynambugraphs import JetRing, Multivector
from pynambugraphs.ng_jetring import DiffPolynomial, Monomial
from pynambugraphs.ng_multivector import multivector_sum


def digest(data):
    digest = sha256(data)
    digest_str = digest.hexdigest()
    return digest_str


def random_polynomial(rng: random.Random, ring: JetRing, n_terms: int = 3,
                      max_order: int = 2) -> DiffPolynomial:
    """
    A small random polynomial in low-order jets with integer coefficients
    """
    terms = {}
    for _ in range(n_terms):
        factors = []
        for _ in range(rng.randint(1, 2)):
            field = rng.randint(0, ring.n_casimirs)
            multi_index = [0] * ring.dimension
            for _ in range(rng.randint(0, max_order)):
                multi_index[rng.randrange(ring.dimension)] += 1
            factors.append(ring.jet(field, multi_index))
        terms[Monomial(tuple(sorted(factors)), ())] = rng.randint(-3, 3)
    return DiffPolynomial(ring, terms)


def random_multivector(rng: random.Random, ring: JetRing, degree: int,
                       n_components: int = 2) -> Multivector:
    """
    A random homogeneous superfunction of the given degree
    """
    parts = []
    for _ in range(n_components):
        indices = rng.sample(range(ring.dimension), degree)
        parts.append(Multivector.xi(ring.dimension, *indices, ring=ring)
                     * random_polynomial(rng, ring))
    return multivector_sum(ring.dimension, parts, ring=ring)


def json_file(path) -> dict:
    with open(path, "r") as _file:
        return json.load(_file)


def flip_first_coefficient(entry_path) -> None:
    """
    Negate the first stored coefficient of a cache entry in place
    """
    entry = json_file(entry_path)
    term = entry["multivector"][0]["terms"][0]
    coeff: str = term["coeff"]
    term["coeff"] = coeff[1:] if coeff.startswith("-") else f"-{coeff}"
    with open(entry_path, "w") as _file:
        json.dump(entry, _file)


def lines(text: str) -> List[str]:
    return [line for line in text.splitlines() if line.strip()]
