"""
Exact differential polynomials in the jet variables of rho and the Casimirs.

A jet variable is an iterated partial derivative of one of the fields
rho (field 0) or a^k (field k, 1 <= k <= d-2), recorded by its multi-index.
Polynomials carry exact sympy QQ coefficients and support total derivatives
with respect to the base coordinates x, y, z, w (internally 0..d-1).
"""
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Tuple, Union

from sympy import QQ

from .py_ng_exceptions import (
    NGDimensionMismatchException,
    NGMaxOrderExceededException,
    NGParseException,
    NGUnsupportedDimensionException
)

COORDINATE_NAMES = "xyzw"
SUPPORTED_DIMENSIONS = (2, 3, 4)

RHO = 0


def to_rational(value):
    """
    Convert an int, a "p/q" string, a Fraction-like or a QQ element to QQ
    """
    if QQ.of_type(value):
        return value
    if isinstance(value, bool):
        raise TypeError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return QQ(int(num), int(den))
        return QQ(int(text))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"Not a rational: {value!r}")


def field_name(field: int) -> str:
    return "rho" if field == RHO else f"a{field}"


class JetVariable(NamedTuple):
    field: int
    multi_index: Tuple[int, ...]

    @property
    def order(self) -> int:
        return sum(self.multi_index)

    @property
    def name(self) -> str:
        subscript = "".join(COORDINATE_NAMES[i] * n
                            for i, n in enumerate(self.multi_index))
        base = field_name(self.field)
        if subscript:
            return f"{base}_{subscript}"
        return base

    def bumped(self, coord: int) -> "JetVariable":
        index = list(self.multi_index)
        index[coord] += 1
        return JetVariable(self.field, tuple(index))


class Monomial(NamedTuple):
    # Both tuples are sorted and list repeated factors repeatedly
    factors: Tuple[JetVariable, ...] = ()
    base_factors: Tuple[int, ...] = ()

    def degree(self) -> int:
        return len(self.factors) + len(self.base_factors)

    def display(self) -> str:
        pieces = []
        for name, exponent in _grouped([v.name for v in self.factors]):
            pieces.append(name if exponent == 1 else f"{name}^{exponent}")
        base_names = [COORDINATE_NAMES[i] for i in self.base_factors]
        for name, exponent in _grouped(base_names):
            pieces.append(name if exponent == 1 else f"{name}^{exponent}")
        return "*".join(pieces) if pieces else "1"

    def __str__(self):
        return self.display()


ONE = Monomial()


def _grouped(names: List[str]):
    grouped = []
    for name in names:
        if grouped and grouped[-1][0] == name:
            grouped[-1][1] += 1
        else:
            grouped.append([name, 1])
    return [(name, count) for name, count in grouped]


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    if not a.factors and not a.base_factors:
        return b
    if not b.factors and not b.base_factors:
        return a
    return Monomial(tuple(sorted(a.factors + b.factors)),
                    tuple(sorted(a.base_factors + b.base_factors)))


@dataclass(frozen=True)
class JetRing:
    """
    Parameters of a jet ring: base dimension and the largest derivative order
    any jet variable may reach. Casimir fields a^1..a^{d-2} exist for d >= 3.
    """
    dimension: int
    max_order: int = 4

    def __post_init__(self):
        if self.dimension not in SUPPORTED_DIMENSIONS:
            raise NGUnsupportedDimensionException(self.dimension)
        if self.max_order < 0:
            raise ValueError(f"max_order must be non-negative: {self.max_order}")

    @property
    def n_casimirs(self) -> int:
        return self.dimension - 2

    @classmethod
    def for_in_degree(cls, dimension: int, max_in_degree: int, extra: int = 1) -> "JetRing":
        """
        Ring wide enough for contents differentiated max_in_degree times,
        plus `extra` derivatives taken afterwards (one for an outer bracket)
        """
        return cls(dimension, max_in_degree + extra)

    def widened(self, other: "JetRing") -> "JetRing":
        if self.dimension != other.dimension:
            raise NGDimensionMismatchException(self.dimension, other.dimension)
        if self.max_order >= other.max_order:
            return self
        return other

    def check_field(self, field: int):
        if not 0 <= field <= self.n_casimirs:
            raise ValueError(
                f"No field {field} in dimension {self.dimension}")

    def check_coordinate(self, coord: int):
        if not 0 <= coord < self.dimension:
            raise ValueError(
                f"No coordinate {coord} in dimension {self.dimension}")

    def jet(self, field: int, multi_index: Iterable[int] = None) -> JetVariable:
        self.check_field(field)
        if multi_index is None:
            multi_index = (0,) * self.dimension
        multi_index = tuple(multi_index)
        if len(multi_index) != self.dimension:
            raise ValueError(f"Multi-index {multi_index} is not of length {self.dimension}")
        variable = JetVariable(field, multi_index)
        if variable.order > self.max_order:
            raise NGMaxOrderExceededException(variable.name, self.max_order)
        return variable

    def zero(self) -> "DiffPolynomial":
        return DiffPolynomial(self)

    def one(self) -> "DiffPolynomial":
        return DiffPolynomial(self, {ONE: QQ(1)})

    def constant(self, value) -> "DiffPolynomial":
        return DiffPolynomial(self, {ONE: to_rational(value)})

    def variable(self, field: int, multi_index: Iterable[int] = None) -> "DiffPolynomial":
        variable = self.jet(field, multi_index)
        return DiffPolynomial._from_clean(self, {Monomial((variable,), ()): QQ(1)})

    def rho(self, multi_index: Iterable[int] = None) -> "DiffPolynomial":
        return self.variable(RHO, multi_index)

    def casimir(self, k: int, multi_index: Iterable[int] = None) -> "DiffPolynomial":
        if k < 1:
            raise ValueError(f"Casimir species start at 1: {k}")
        return self.variable(k, multi_index)

    def coordinate(self, coord: int) -> "DiffPolynomial":
        self.check_coordinate(coord)
        return DiffPolynomial._from_clean(self, {Monomial((), (coord,)): QQ(1)})


class DiffPolynomial:
    """
    Immutable exact polynomial: a map Monomial -> nonzero QQ coefficient
    """
    __slots__ = ("_ring", "_terms")

    def __init__(self, ring: JetRing, terms: Dict[Monomial, object] = None):
        clean = {}
        if terms:
            for monomial, coeff in terms.items():
                coeff = to_rational(coeff)
                if coeff:
                    clean[monomial] = coeff
        self._ring = ring
        self._terms = clean

    @classmethod
    def _from_clean(cls, ring: JetRing, terms: Dict[Monomial, object]) -> "DiffPolynomial":
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._terms = terms
        return obj

    @property
    def ring(self) -> JetRing:
        return self._ring

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def monomials(self) -> List[Monomial]:
        return sorted(self._terms)

    def coefficients(self) -> List:
        return [self._terms[m] for m in self.monomials()]

    def terms(self) -> List[Tuple[Monomial, object]]:
        return [(m, self._terms[m]) for m in self.monomials()]

    def coefficient(self, monomial: Monomial):
        return self._terms.get(monomial, QQ(0))

    def leading_term(self) -> Tuple[Monomial, object]:
        monomial = min(self._terms)
        return monomial, self._terms[monomial]

    def _coerce(self, other) -> "DiffPolynomial":
        if isinstance(other, DiffPolynomial):
            return other
        return self._ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        ring = self._ring.widened(other._ring)
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            total = terms.get(monomial, QQ(0)) + coeff
            if total:
                terms[monomial] = total
            else:
                terms.pop(monomial, None)
        return DiffPolynomial._from_clean(ring, terms)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return DiffPolynomial._from_clean(
            self._ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self.__add__(-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def scale(self, factor) -> "DiffPolynomial":
        factor = to_rational(factor)
        if not factor:
            return DiffPolynomial._from_clean(self._ring, {})
        return DiffPolynomial._from_clean(
            self._ring, {m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, DiffPolynomial):
            return self.scale(other)
        ring = self._ring.widened(other._ring)
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = monomial_product(m1, m2)
                total = terms.get(monomial, QQ(0)) + c1 * c2
                if total:
                    terms[monomial] = total
                else:
                    del terms[monomial]
        return DiffPolynomial._from_clean(ring, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, DiffPolynomial):
            return (self._ring.dimension == other._ring.dimension and
                    self._terms == other._terms)
        if isinstance(other, int) or QQ.of_type(other):
            return self == self._ring.constant(other)
        return NotImplemented

    __hash__ = None

    def total_derivative(self, coord: int) -> "DiffPolynomial":
        """
        Total derivative d/dx^coord by the Leibniz rule over monomial factors.

        Raises
        ------
        NGMaxOrderExceededException
            If a differentiated jet variable would exceed the ring's max_order
        """
        ring = self._ring
        ring.check_coordinate(coord)
        terms: Dict[Monomial, object] = {}
        for monomial, coeff in self._terms.items():
            for derived, multiplicity in _monomial_derivatives(monomial, coord, ring.max_order):
                total = terms.get(derived, QQ(0)) + coeff * multiplicity
                if total:
                    terms[derived] = total
                else:
                    del terms[derived]
        return DiffPolynomial._from_clean(ring, terms)

    def max_jet_order(self) -> int:
        orders = [v.order for m in self._terms for v in m.factors]
        return max(orders) if orders else 0

    def __str__(self):
        return format_terms(self.terms())

    def __repr__(self):
        return f"DiffPolynomial({self})"

    def to_json(self) -> List[Dict[str, str]]:
        return [{"monomial": m.display(), "coeff": str(c)} for m, c in self.terms()]

    @classmethod
    def from_json(cls, ring: JetRing, term_list: List[Dict[str, str]]) -> "DiffPolynomial":
        poly = ring.zero()
        for term in term_list:
            monomial = parse_monomial(ring, term["monomial"])
            poly = poly + DiffPolynomial(ring, {monomial: to_rational(term["coeff"])})
        return poly

    @classmethod
    def from_text(cls, ring: JetRing, text: str) -> "DiffPolynomial":
        """
        Parse the display format, e.g. "rho_y^3*rho_xxx - 3*rho_x*rho_y^2*rho_xxy"
        """
        stripped = text.replace(" ", "")
        if stripped.startswith("(") and stripped.endswith(")"):
            stripped = stripped[1:-1]
        if stripped in ("", "0"):
            return ring.zero()
        terms: Dict[Monomial, object] = {}
        position = 0
        for match in _TERM_RE.finditer(stripped):
            if not match.group(0):
                continue
            if match.start() != position:
                raise NGParseException("unexpected text", text=stripped, position=position)
            position = match.end()
            sign = -1 if match.group("sign") == "-" else 1
            coeff = to_rational(match.group("coeff") or 1) * sign
            body = match.group("body")
            monomial = parse_monomial(ring, body) if body else ONE
            terms[monomial] = terms.get(monomial, QQ(0)) + coeff
        if position != len(stripped):
            raise NGParseException("unexpected text", text=stripped, position=position)
        return DiffPolynomial(ring, terms)


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)(?:(?P<coeff>\d+(?:/\d+)?)(?:\*|(?=[+-]|$)))?"
    r"(?P<body>[a-z][a-z0-9_^*]*)?")

_FACTOR_RE = re.compile(r"^(?P<name>rho|a\d+|[xyzw])(?:_(?P<sub>[xyzw]+))?(?:\^(?P<exp>\d+))?$")


def parse_monomial(ring: JetRing, text: str) -> Monomial:
    if text == "1":
        return ONE
    factors = []
    base = []
    for piece in text.split("*"):
        match = _FACTOR_RE.match(piece)
        if match is None:
            raise NGParseException(f"bad factor '{piece}'", text=text, position=text.find(piece))
        exponent = int(match.group("exp") or 1)
        name = match.group("name")
        if name in COORDINATE_NAMES:
            if match.group("sub"):
                raise NGParseException(f"coordinate with subscript '{piece}'",
                                       text=text, position=text.find(piece))
            coord = COORDINATE_NAMES.index(name)
            ring.check_coordinate(coord)
            base.extend([coord] * exponent)
            continue
        field = RHO if name == "rho" else int(name[1:])
        multi_index = [0] * ring.dimension
        for letter in match.group("sub") or "":
            coord = COORDINATE_NAMES.index(letter)
            ring.check_coordinate(coord)
            multi_index[coord] += 1
        factors.extend([ring.jet(field, multi_index)] * exponent)
    return Monomial(tuple(sorted(factors)), tuple(sorted(base)))


def _monomial_derivatives(monomial: Monomial, coord: int, max_order: int):
    factors = monomial.factors
    i = 0
    while i < len(factors):
        variable = factors[i]
        j = i
        while j < len(factors) and factors[j] == variable:
            j += 1
        bumped = variable.bumped(coord)
        if bumped.order > max_order:
            raise NGMaxOrderExceededException(bumped.name, max_order)
        rest = factors[:i] + factors[i + 1:]
        yield (Monomial(tuple(sorted(rest + (bumped,))), monomial.base_factors), j - i)
        i = j
    base = monomial.base_factors
    count = base.count(coord)
    if count:
        k = base.index(coord)
        yield (Monomial(factors, base[:k] + base[k + 1:]), count)


def format_terms(terms: List[Tuple[Monomial, object]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for n, (monomial, coeff) in enumerate(terms):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        body = monomial.display()
        if monomial == ONE:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        if n == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


def polynomial_sum(ring: JetRing, polys: Iterable[Union[DiffPolynomial, int]]) -> DiffPolynomial:
    zero = ring.zero()
    terms: Dict[Monomial, object] = {}
    for poly in polys:
        poly = zero._coerce(poly)
        ring = ring.widened(poly.ring)
        for monomial, coeff in poly._terms.items():
            terms[monomial] = terms.get(monomial, QQ(0)) + coeff
    return DiffPolynomial._from_clean(ring, {m: c for m, c in terms.items() if c})
