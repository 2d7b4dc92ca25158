"""
Superfunctions: polynomials in the odd symbols xi_0..xi_{d-1} whose
coefficients are DiffPolynomials. Vector fields, bivectors and trivectors
are the homogeneous pieces; functions are the degree-0 piece.
"""
import re
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import QQ

from .ng_jetring import DiffPolynomial, JetRing, polynomial_sum, to_rational
from .py_ng_exceptions import NGDimensionMismatchException, NGParseException

XiKey = Tuple[int, ...]


@lru_cache(maxsize=None)
def xi_merge(left: XiKey, right: XiKey) -> Optional[Tuple[int, XiKey]]:
    """
    Sign and key of xi_left * xi_right, or None when an index repeats
    """
    if set(left) & set(right):
        return None
    inversions = sum(1 for i in left for j in right if i > j)
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(left + right))


class Multivector:
    __slots__ = ("_dimension", "_ring", "_components")

    def __init__(self, dimension: int, components: Dict[XiKey, DiffPolynomial] = None,
                 ring: JetRing = None):
        if ring is None:
            ring = JetRing(dimension)
        clean = {}
        for key, poly in (components or {}).items():
            key = tuple(key)
            if list(key) != sorted(set(key)) or any(not 0 <= i < dimension for i in key):
                raise ValueError(f"Invalid xi key {key} in dimension {dimension}")
            if poly.ring.dimension != dimension:
                raise NGDimensionMismatchException(dimension, poly.ring.dimension)
            ring = ring.widened(poly.ring)
            if poly:
                clean[key] = poly
        self._dimension = dimension
        self._ring = ring
        self._components = clean

    @classmethod
    def _from_clean(cls, dimension, ring, components) -> "Multivector":
        obj = cls.__new__(cls)
        obj._dimension = dimension
        obj._ring = ring
        obj._components = components
        return obj

    @classmethod
    def zero(cls, dimension: int, ring: JetRing = None) -> "Multivector":
        return cls(dimension, ring=ring)

    @classmethod
    def function(cls, poly: DiffPolynomial) -> "Multivector":
        return cls(poly.ring.dimension, {(): poly}, ring=poly.ring)

    @classmethod
    def xi(cls, dimension: int, *indices: int, ring: JetRing = None) -> "Multivector":
        """
        The product xi_i1 * xi_i2 * ... in the order given
        """
        if ring is None:
            ring = JetRing(dimension)
        result = cls(dimension, {(): ring.one()}, ring=ring)
        for i in indices:
            result = result * cls(dimension, {(i,): ring.one()}, ring=ring)
        return result

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def ring(self) -> JetRing:
        return self._ring

    def components(self) -> Dict[XiKey, DiffPolynomial]:
        return {key: self._components[key] for key in sorted(self._components)}

    def component(self, key: XiKey) -> DiffPolynomial:
        return self._components.get(tuple(key), self._ring.zero())

    def keys(self) -> List[XiKey]:
        return sorted(self._components)

    def is_zero(self) -> bool:
        return not self._components

    def __bool__(self):
        return bool(self._components)

    def degree(self) -> Optional[int]:
        """
        Homogeneous xi-degree, or None for zero. Raises ValueError when mixed.
        """
        sizes = {len(key) for key in self._components}
        if not sizes:
            return None
        if len(sizes) > 1:
            raise ValueError(f"Multivector is not homogeneous: degrees {sorted(sizes)}")
        return sizes.pop()

    def _check(self, other: "Multivector"):
        if self._dimension != other._dimension:
            raise NGDimensionMismatchException(self._dimension, other._dimension)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        components = dict(self._components)
        for key, poly in other._components.items():
            total = components[key] + poly if key in components else poly
            if total:
                components[key] = total
            else:
                components.pop(key, None)
        return Multivector._from_clean(self._dimension, self._ring.widened(other._ring), components)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Multivector._from_clean(
            self._dimension, self._ring, {k: -p for k, p in self._components.items()})

    def __sub__(self, other):
        return self.__add__(-other)

    def scale(self, factor) -> "Multivector":
        factor = to_rational(factor)
        if not factor:
            return Multivector.zero(self._dimension, self._ring)
        return Multivector._from_clean(
            self._dimension, self._ring, {k: p.scale(factor) for k, p in self._components.items()})

    def wedge(self, other: "Multivector") -> "Multivector":
        self._check(other)
        components: Dict[XiKey, DiffPolynomial] = {}
        for key_a, poly_a in self._components.items():
            for key_b, poly_b in other._components.items():
                merged = xi_merge(key_a, key_b)
                if merged is None:
                    continue
                sign, key = merged
                product = poly_a * poly_b
                if sign < 0:
                    product = -product
                total = components[key] + product if key in components else product
                if total:
                    components[key] = total
                else:
                    components.pop(key, None)
        return Multivector._from_clean(self._dimension, self._ring.widened(other._ring), components)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return self.wedge(other)
        if isinstance(other, DiffPolynomial):
            return self.wedge(Multivector.function(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, DiffPolynomial):
            return Multivector.function(other).wedge(self)
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self._dimension == other._dimension and self._components == other._components
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def total_derivative(self, coord: int) -> "Multivector":
        components = {}
        for key, poly in self._components.items():
            derived = poly.total_derivative(coord)
            if derived:
                components[key] = derived
        return Multivector._from_clean(self._dimension, self._ring, components)

    def odd_derivative(self, index: int, side: str = "left") -> "Multivector":
        """
        d/dxi_index acting from the left (sign (-1)^position) or from the right
        (sign (-1)^(positions after it))
        """
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right': {side}")
        components = {}
        for key, poly in self._components.items():
            if index not in key:
                continue
            position = key.index(index)
            passed = position if side == "left" else len(key) - 1 - position
            reduced = key[:position] + key[position + 1:]
            components[reduced] = -poly if passed % 2 else poly
        return Multivector._from_clean(self._dimension, self._ring, components)

    def bracket(self, other: "Multivector") -> "Multivector":
        return schouten_bracket(self, other)

    def __str__(self):
        if not self._components:
            return "0"
        pieces = []
        for key in self.keys():
            poly = self._components[key]
            xi_text = "*".join(f"xi{i}" for i in key)
            if not key:
                pieces.append(f"({poly})" if len(self._components) > 1 else str(poly))
            elif poly == 1:
                pieces.append(xi_text)
            else:
                pieces.append(f"({poly})*{xi_text}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"Multivector({self})"

    def to_json(self) -> List[Dict]:
        return [{"xi_indices": list(key), "terms": self._components[key].to_json()}
                for key in self.keys()]

    @classmethod
    def from_json(cls, ring: JetRing, data: List[Dict]) -> "Multivector":
        components = {}
        for entry in data:
            components[tuple(entry["xi_indices"])] = DiffPolynomial.from_json(ring, entry["terms"])
        return cls(ring.dimension, components, ring=ring)

    @classmethod
    def from_text(cls, ring: JetRing, text: str) -> "Multivector":
        """
        Parse "(...)*xi0 + (...)*xi1" or "(...)*xi0*xi1"; text without any xi is a function
        """
        if "xi" not in text:
            return cls.function(DiffPolynomial.from_text(ring, text))
        components = {}
        position = 0
        compact = text.replace(" ", "")
        for match in _COMPONENT_RE.finditer(compact):
            if match.start() != position:
                raise NGParseException("expected '(...)*xi..'", text=compact, position=position)
            position = match.end()
            poly_text = match.group("poly")
            poly = ring.one() if poly_text is None else DiffPolynomial.from_text(ring, poly_text)
            if match.group("sign") == "-":
                poly = -poly
            indices = [int(i) for i in re.findall(r"xi(\d+)", match.group("xis"))]
            term = cls.xi(ring.dimension, *indices, ring=ring) * poly
            for key, value in term._components.items():
                components[key] = components[key] + value if key in components else value
        if position != len(compact):
            raise NGParseException("trailing text", text=compact, position=position)
        return cls(ring.dimension, components, ring=ring)


_COMPONENT_RE = re.compile(r"(?P<sign>[+-]?)(?:\((?P<poly>[^()]*)\)\*)?(?P<xis>xi\d+(?:\*xi\d+)*)")


def schouten_bracket(a: Multivector, b: Multivector) -> Multivector:
    """
    Odd Poisson bracket of superfunctions:

        [[A, B]] = sum_i  (A d<-/dxi_i)(dB/dx^i) - (dA/dx^i)(d->/dxi_i B)

    with total derivatives in x and one-sided odd derivatives. The result has
    degree |A| + |B| - 1.
    """
    if a.dimension != b.dimension:
        raise NGDimensionMismatchException(a.dimension, b.dimension)
    result = Multivector.zero(a.dimension, a.ring.widened(b.ring))
    for i in range(a.dimension):
        right_a = a.odd_derivative(i, side="right")
        if right_a:
            result = result + right_a.wedge(b.total_derivative(i))
        left_b = b.odd_derivative(i, side="left")
        if left_b:
            result = result - a.total_derivative(i).wedge(left_b)
    return result


def euler_field(dimension: int, ring: JetRing = None) -> Multivector:
    """
    E = sum_i x^i xi_i; one total derivative by x^j leaves xi_j
    """
    if ring is None:
        ring = JetRing(dimension)
    components = {(i,): ring.coordinate(i) for i in range(dimension)}
    return Multivector(dimension, components, ring=ring)


def multivector_sum(dimension: int, vectors, ring: JetRing = None) -> Multivector:
    if ring is None:
        ring = JetRing(dimension)
    parts: Dict[XiKey, List[DiffPolynomial]] = {}
    for vector in vectors:
        if isinstance(vector, int) and vector == 0:
            continue
        if vector.dimension != dimension:
            raise NGDimensionMismatchException(dimension, vector.dimension)
        ring = ring.widened(vector.ring)
        for key, poly in vector._components.items():
            parts.setdefault(key, []).append(poly)
    components = {}
    for key, polys in parts.items():
        total = polynomial_sum(ring, polys)
        if total:
            components[key] = total
    return Multivector._from_clean(dimension, ring, components)


def rational_multiple_of(a: Multivector, b: Multivector):
    """
    The rational c with a = c*b, or None when no such c exists. b must be nonzero.
    """
    if b.is_zero():
        raise ValueError("Reference multivector is zero")
    if a.is_zero():
        return QQ(0)
    if set(a.keys()) != set(b.keys()):
        return None
    key = b.keys()[0]
    monomial, coeff_b = b.component(key).leading_term()
    ratio = a.component(key).coefficient(monomial) / coeff_b
    if not ratio:
        return None
    if a == b.scale(ratio):
        return ratio
    return None
