from .linalg import Matrix
from .scalars import RATIONAL, formatRational, formatScalar, isConstantScalar, toRational


UNIT_NAME = "one"

# flag set on rings whose "chern" class is integral
INTEGRAL_CHERN = "integralChern"


class AlgebraError(Exception):
    pass


class UnknownBasisElementError(AlgebraError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DegreeError(AlgebraError):
    pass


class GradedBasis:
    def __init__(self, degrees):
        degrees = tuple(tuple(names) for names in degrees)
        topDegree = len(degrees) - 1
        if topDegree < 0 or topDegree % 2:
            raise AlgebraError(f"top degree must be even and nonnegative, not {topDegree}")
        if len(degrees[0]) != 1:
            raise AlgebraError(f"degree 0 must hold exactly the unit, not {degrees[0]}")
        if len(degrees[topDegree]) != 1:
            raise AlgebraError(
                f"degree {topDegree} must hold exactly one volume class, "
                f"not {degrees[topDegree]}"
            )
        self.degrees = degrees
        self.topDegree = topDegree
        self._degreeOf = {}
        self._index = {}
        for degree, names in enumerate(degrees):
            for name in names:
                if name in self._degreeOf:
                    raise AlgebraError(f"duplicate basis element name '{name}'")
                self._degreeOf[name] = degree
                self._index[name] = len(self._index)
        self.names = tuple(self._index)

    @property
    def unitName(self):
        return self.degrees[0][0]

    @property
    def volumeName(self):
        return self.degrees[self.topDegree][0]

    @property
    def dimensions(self):
        return tuple(len(names) for names in self.degrees)

    def dimension(self, degree):
        return len(self.namesInDegree(degree))

    def namesInDegree(self, degree):
        if 0 <= degree <= self.topDegree:
            return self.degrees[degree]
        return ()

    def degreeOf(self, name):
        try:
            return self._degreeOf[name]
        except KeyError:
            raise UnknownBasisElementError(f"unknown basis element '{name}'") from None

    def index(self, name):
        self.degreeOf(name)
        return self._index[name]

    def __contains__(self, name):
        return name in self._degreeOf

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if not isinstance(other, GradedBasis):
            return NotImplemented
        return self.degrees == other.degrees

    def __repr__(self):
        return f"GradedBasis({[list(names) for names in self.degrees]!r})"


class Element:
    """Sparse linear combination of basis elements. The degree is set when the
    element is homogeneous (or a zero element of a known degree).
    """

    __slots__ = ("components", "degree")

    def __init__(self, components=None, degree=None):
        self.components = {
            name: value for name, value in (components or {}).items() if value != 0
        }
        self.degree = degree

    def coefficient(self, name):
        return self.components.get(name, 0)

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def __neg__(self):
        return Element({k: -v for k, v in self.components.items()}, self.degree)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        result = dict(self.components)
        for name, value in other.components.items():
            result[name] = result[name] + value if name in result else value
        return Element(result, _combinedDegree(self, other))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        return Element(
            {k: v * scalar for k, v in self.components.items()}, self.degree
        )

    __rmul__ = __mul__

    def mapCoefficients(self, func):
        return Element({k: func(v) for k, v in self.components.items()}, self.degree)

    def __repr__(self):
        return f"Element({formatElement(self)!r})"

    def __str__(self):
        return formatElement(self)


def _combinedDegree(a, b):
    if a.degree == b.degree:
        return a.degree
    if not a.components and a.degree is None:
        return b.degree
    if not b.components and b.degree is None:
        return a.degree
    return None


def formatElement(element, order=None):
    """Render as a linear combination, e.g. "w + 3/2*c - (1*e^1)*q"."""
    names = list(element.components)
    if order is not None:
        names.sort(key=order.index)
    if not names:
        return "0"
    parts = []
    for name in names:
        value = element.components[name]
        if isConstantScalar(value):
            value = toRational(value)
            negative = value < 0
            magnitude = -value if negative else value
            term = name if magnitude == 1 else f"{formatRational(magnitude)}*{name}"
        else:
            negative = False
            term = f"({formatScalar(value)})*{name}"
        if not parts:
            parts.append("-" + term if negative else term)
        else:
            parts.append((" - " if negative else " + ") + term)
    return "".join(parts)


class PDAlgebra:
    """A graded-commutative algebra with a distinguished top class.

    `table` holds the explicit products {(a, b): Element}; products not listed
    are completed by the sign rule from (b, a), by the unit law, or are zero.
    """

    def __init__(self, name, basis, table, field=RATIONAL, classes=None, flags=()):
        self.name = name
        self.basis = basis
        self.field = field
        self._table = {}
        for (a, b), product in table.items():
            self.basis.degreeOf(a)
            self.basis.degreeOf(b)
            self._table[(a, b)] = self.element(_components(product))
        self.classes = {
            className: self.element(_components(value))
            for className, value in (classes or {}).items()
        }
        self.flags = frozenset(flags)
        self._productCache = {}

    @property
    def topDegree(self):
        return self.basis.topDegree

    @property
    def halfDimension(self):
        return self.basis.topDegree // 2

    @property
    def explicitTable(self):
        return dict(self._table)

    def element(self, components, degree=None):
        """Build an element, checking names and coercing coefficients into the
        algebra's field. The degree is inferred when the element is homogeneous.
        """
        coerced = {}
        degrees = set()
        for name, value in components.items():
            degrees.add(self.basis.degreeOf(name))
            value = self.field.coerce(value)
            if value != 0:
                coerced[name] = value
        if degree is None and len(degrees) == 1 and coerced:
            degree = degrees.pop()
        elif degree is not None and any(
            self.basis.degreeOf(name) != degree for name in coerced
        ):
            raise DegreeError(f"element is not homogeneous of degree {degree}")
        return Element(coerced, degree)

    def basisElement(self, name):
        return Element({name: self.field.one}, self.basis.degreeOf(name))

    def unit(self):
        return self.basisElement(self.basis.unitName)

    def zero(self, degree=None):
        return Element({}, degree)

    def basisProduct(self, a, b):
        key = (a, b)
        product = self._productCache.get(key)
        if product is None:
            product = self._computeBasisProduct(a, b)
            self._productCache[key] = product
        return product

    def _computeBasisProduct(self, a, b):
        degreeA = self.basis.degreeOf(a)
        degreeB = self.basis.degreeOf(b)
        product = self._table.get((a, b))
        if product is not None:
            return product
        product = self._table.get((b, a))
        if product is not None:
            return product * ((-1) ** (degreeA * degreeB))
        unitName = self.basis.unitName
        if a == unitName:
            return self.basisElement(b)
        if b == unitName:
            return self.basisElement(a)
        return self.zero(degreeA + degreeB)

    def multiply(self, a, b):
        """Bilinear extension of the structure constants."""
        zero = self.field.zero
        result = {}
        for nameA, valueA in a.components.items():
            for nameB, valueB in b.components.items():
                product = self.basisProduct(nameA, nameB)
                if not product:
                    continue
                coefficient = valueA * valueB
                for name, value in product.components.items():
                    result[name] = result.get(name, zero) + coefficient * value
        if a.degree is not None and b.degree is not None:
            degree = a.degree + b.degree
        else:
            degree = None
        return Element(result, degree)

    def power(self, element, exponent):
        result = self.unit()
        for _ in range(exponent):
            result = self.multiply(result, element)
        return result

    def coordinates(self, element, degree):
        """Coefficient vector of the degree-`degree` part in basis order."""
        return tuple(
            self.field.coerce(element.coefficient(name))
            for name in self.basis.namesInDegree(degree)
        )

    def canonicalTable(self):
        """All nonzero products (a, b) with a not after b in basis order, the
        unit excluded.
        """
        names = [name for name in self.basis.names if name != self.basis.unitName]
        table = {}
        for i, a in enumerate(names):
            for b in names[i:]:
                product = self.basisProduct(a, b)
                if product:
                    table[(a, b)] = product
        return table

    def withField(self, field, name=None):
        return PDAlgebra(
            self.name if name is None else name,
            self.basis,
            {key: p.mapCoefficients(field.coerce) for key, p in self._table.items()},
            field,
            {k: v.mapCoefficients(field.coerce) for k, v in self.classes.items()},
            self.flags,
        )

    def specialize(self, eps):
        """Substitute the rational value `eps` for e in every structure constant."""
        func = lambda value: self.field.specialize(value, eps)  # noqa: E731
        return PDAlgebra(
            self.name,
            self.basis,
            {key: p.mapCoefficients(func) for key, p in self._table.items()},
            RATIONAL,
            {k: v.mapCoefficients(func) for k, v in self.classes.items()},
            self.flags,
        )

    def __eq__(self, other):
        if not isinstance(other, PDAlgebra):
            return NotImplemented
        return (
            self.name == other.name
            and self.field.name == other.field.name
            and self.basis == other.basis
            and self.flags == other.flags
            and self.classes == other.classes
            and self.canonicalTable() == other.canonicalTable()
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"<PDAlgebra '{self.name}' dims={self.basis.dimensions} "
            f"field={self.field.name}>"
        )


def _components(value):
    if isinstance(value, Element):
        return value.components
    return value


def multiply(a, b, algebra):
    return algebra.multiply(a, b)


def pairingMatrix(algebra, k):
    """Matrix of H^k x H^(2m-k) -> H^2m, read against the volume class; rows
    follow the degree k basis.
    """
    top = algebra.topDegree
    if not 0 <= k <= top:
        raise DegreeError(f"pairing degree {k} outside 0..{top}")
    volumeName = algebra.basis.volumeName
    rowNames = algebra.basis.namesInDegree(k)
    colNames = algebra.basis.namesInDegree(top - k)
    entries = [
        algebra.basisProduct(a, b).coefficient(volumeName)
        for a in rowNames
        for b in colNames
    ]
    return Matrix(len(rowNames), len(colNames), entries, algebra.field)
