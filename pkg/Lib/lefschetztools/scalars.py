import logging
import operator
import re
from fractions import Fraction
from typing import NamedTuple
from sympy import QQ
from sympy.polys.fields import FracField
from sympy.polys.polyerrors import ExactQuotientFailed


logger = logging.getLogger(__name__)


class ScalarError(Exception):
    pass


class ScalarDivisionError(ScalarError, ZeroDivisionError):
    pass


class ExponentUnderflowError(ScalarError):
    pass


class ScalarParseError(ScalarError, ValueError):
    pass


# Rationals are plain fractions.Fraction objects


def toRational(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parseRational(value)
    if isinstance(value, EpsPoly) and value.degree <= 0:
        return value.coefficient(0)
    if isinstance(value, EpsFraction) and value.isConstant():
        return value.numerator.coefficient(0)
    raise TypeError(f"can't convert {value!r} to a rational")


_rationalOperators = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rationalArith(a, b, op):
    func = _rationalOperators.get(op)
    if func is None:
        raise ValueError(f"unknown operation: {op!r}")
    a = toRational(a)
    b = toRational(b)
    if op == "div" and b == 0:
        raise ScalarDivisionError(f"division of {formatRational(a)} by zero")
    return func(a, b)


rationalPat = re.compile(r"([+-]?\d+)(?:/(\d+))?$")


def parseRational(text):
    m = rationalPat.match(text.strip())
    if m is None:
        raise ScalarParseError(f"not a rational: {text!r}")
    num, den = m.groups()
    den = 1 if den is None else int(den)
    if den == 0:
        raise ScalarParseError(f"zero denominator: {text!r}")
    return Fraction(int(num), den)


def formatRational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# Polynomials and rational functions in e are sympy's QQ[e] and QQ(e)
_epsField = FracField("e", QQ)
_epsRing = _epsField.ring
_e = _epsRing.gens[0]


def _toQQ(value):
    value = toRational(value)
    return QQ(value.numerator, value.denominator)


def _fromQQ(value):
    return Fraction(int(value.numerator), int(value.denominator))


class EpsPoly:
    """Univariate polynomial in e with rational coefficients. Immutable; wraps
    an element of sympy's QQ[e].
    """

    __slots__ = ("_poly",)

    def __init__(self, coefficients=None):
        terms = {}
        if coefficients:
            if isinstance(coefficients, dict):
                items = coefficients.items()
            else:
                items = enumerate(coefficients)
            for exponent, value in items:
                if exponent < 0:
                    raise ExponentUnderflowError(f"negative exponent: {exponent}")
                terms[int(exponent)] = terms.get(int(exponent), 0) + toRational(value)
        self._poly = _epsRing.from_dict(
            {(k,): _toQQ(v) for k, v in terms.items() if v}
        )

    @classmethod
    def _wrap(cls, poly):
        self = cls.__new__(cls)
        self._poly = poly
        return self

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def monomial(cls, coefficient, exponent):
        return cls({exponent: coefficient})

    @classmethod
    def eps(cls):
        return cls._wrap(_e)

    @classmethod
    def fromDomain(cls, value):
        """From an element of sympy's QQ[e]."""
        return cls._wrap(value)

    def toDomain(self):
        return self._poly

    @property
    def coefficients(self):
        return {monom[0]: _fromQQ(c) for monom, c in self._poly.items()}

    @property
    def degree(self):
        """Highest exponent, -1 for the zero polynomial."""
        return self._poly.degree() if self._poly else -1

    @property
    def leadingCoefficient(self):
        if not self._poly:
            return Fraction(0)
        return _fromQQ(self._poly.LC)

    def coefficient(self, exponent):
        value = self._poly.get((exponent,))
        return Fraction(0) if value is None else _fromQQ(value)

    def __bool__(self):
        return bool(self._poly)

    def __eq__(self, other):
        other = _coercePoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._poly == other._poly

    def __hash__(self):
        if self.degree <= 0:
            return hash(self.coefficient(0))
        return hash(frozenset(self.coefficients.items()))

    def __neg__(self):
        return EpsPoly._wrap(-self._poly)

    def __add__(self, other):
        other = _coercePoly(other)
        if other is NotImplemented:
            return NotImplemented
        return EpsPoly._wrap(self._poly + other._poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coercePoly(other)
        if other is NotImplemented:
            return NotImplemented
        return EpsPoly._wrap(self._poly - other._poly)

    def __rsub__(self, other):
        other = _coercePoly(other)
        if other is NotImplemented:
            return NotImplemented
        return EpsPoly._wrap(other._poly - self._poly)

    def __mul__(self, other):
        other = _coercePoly(other)
        if other is NotImplemented:
            return NotImplemented
        return EpsPoly._wrap(self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ExponentUnderflowError("negative power of a polynomial")
        return EpsPoly._wrap(self._poly**exponent)

    def __divmod__(self, other):
        other = _coercePoly(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ScalarDivisionError("polynomial division by zero")
        quotient, remainder = self._poly.div(other._poly)
        return EpsPoly._wrap(quotient), EpsPoly._wrap(remainder)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other):
        other = _coercePoly(other)
        if not other:
            raise ScalarDivisionError("polynomial division by zero")
        try:
            return EpsPoly._wrap(self._poly.exquo(other._poly))
        except ExactQuotientFailed:
            raise ScalarError(f"{other} does not divide {self}") from None

    def monic(self):
        return EpsPoly._wrap(self._poly.monic())

    def evaluate(self, value):
        return _fromQQ(self._poly.evaluate(_e, _toQQ(value)))

    def derivative(self):
        return EpsPoly._wrap(self._poly.diff(_e))

    def gcd(self, other):
        return epsPolyGcd(self, other)

    def squarefreePart(self):
        if self.degree <= 0:
            return self.monic()
        return EpsPoly._wrap(self._poly.sqf_part().monic())

    def __repr__(self):
        return f"EpsPoly({formatEpsPoly(self)!r})"

    def __str__(self):
        return formatEpsPoly(self)


# sympy domain of denominator-free symbolic entries
epsPolynomialDomain = _epsRing.to_domain()


def _coercePoly(value):
    if isinstance(value, EpsPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return EpsPoly._wrap(_epsRing.ground_new(_toQQ(value)))
    return NotImplemented


def epsPolyGcd(p, q):
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    p = _coercePoly(p)
    q = _coercePoly(q)
    return EpsPoly._wrap(p._poly.gcd(q._poly).monic())


def epsPolyLcm(p, q):
    p = _coercePoly(p)
    q = _coercePoly(q)
    if not p or not q:
        return EpsPoly()
    return EpsPoly._wrap(p._poly.lcm(q._poly).monic())


epsTermPat = re.compile(r"([+-]?)(\d+(?:/\d+)?)\*e\^(\d+)")


def formatEpsPoly(poly):
    if not poly:
        return "0"
    parts = []
    for exponent in sorted(poly.coefficients, reverse=True):
        value = poly.coefficient(exponent)
        term = f"{formatRational(abs(value))}*e^{exponent}"
        if not parts:
            parts.append(term if value > 0 else "-" + term)
        else:
            parts.append((" + " if value > 0 else " - ") + term)
    return "".join(parts)


def parseEpsPoly(text):
    s = text.replace(" ", "")
    if rationalPat.match(s):
        return EpsPoly.constant(parseRational(s))
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = epsTermPat.match(s, pos)
        if m is None or (pos and not m.group(1)):
            raise ScalarParseError(f"not an e-polynomial: {text!r}")
        sign, value, exponent = m.groups()
        value = parseRational(value)
        if sign == "-":
            value = -value
        exponent = int(exponent)
        coeffs[exponent] = coeffs.get(exponent, 0) + value
        pos = m.end()
    if not coeffs:
        raise ScalarParseError(f"not an e-polynomial: {text!r}")
    return EpsPoly(coeffs)


class EpsFraction:
    """Element of the rational function field Q(e): a reduced fraction with a
    monic denominator. Products and sums of two polynomials stay in QQ[e];
    everything else goes through sympy's QQ(e).
    """

    __slots__ = ("_num", "_den")

    def __init__(self, numerator, denominator=1):
        num = _coercePoly(numerator)
        den = _coercePoly(denominator)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError(f"can't build a fraction from {numerator!r}/{denominator!r}")
        if not den:
            raise ScalarDivisionError("zero denominator")
        self._num, self._den = _reduce(num._poly, den._poly)

    @classmethod
    def eps(cls):
        return cls(EpsPoly.eps())

    @classmethod
    def fromDomain(cls, value):
        """From an element of sympy's QQ(e)."""
        return _makeReduced(*_reduce(value.numer, value.denom))

    def toDomain(self):
        return _epsField.new(self._num, self._den)

    @property
    def numerator(self):
        return EpsPoly._wrap(self._num)

    @property
    def denominator(self):
        return EpsPoly._wrap(self._den)

    def isConstant(self):
        return self._num.is_ground and self._den.is_ground

    def _isPolynomial(self):
        return self._den.is_ground

    def __bool__(self):
        return bool(self._num)

    def __eq__(self, other):
        other = _coerceFraction(other)
        if other is NotImplemented:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._den.is_ground:
            return hash(self.numerator)
        return hash((self.numerator, self.denominator))

    def __neg__(self):
        return _makeReduced(-self._num, self._den)

    def __add__(self, other):
        other = _coerceFraction(other)
        if other is NotImplemented:
            return NotImplemented
        if self._isPolynomial() and other._isPolynomial():
            return _makeReduced(self._num + other._num, _epsRing.one)
        return EpsFraction.fromDomain(self.toDomain() + other.toDomain())

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerceFraction(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerceFraction(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerceFraction(other)
        if other is NotImplemented:
            return NotImplemented
        if self._isPolynomial() and other._isPolynomial():
            return _makeReduced(self._num * other._num, _epsRing.one)
        return EpsFraction.fromDomain(self.toDomain() * other.toDomain())

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerceFraction(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ScalarDivisionError(f"division of {self} by zero")
        return EpsFraction.fromDomain(self.toDomain() / other.toDomain())

    def __rtruediv__(self, other):
        other = _coerceFraction(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent):
        if exponent < 0:
            return EpsFraction(1) / (self ** (-exponent))
        return _makeReduced(self._num**exponent, self._den**exponent)

    def evaluate(self, value):
        value = toRational(value)
        den = self.denominator.evaluate(value)
        if not den:
            raise ScalarDivisionError(f"denominator of {self} vanishes at e={value}")
        return self.numerator.evaluate(value) / den

    def __repr__(self):
        return f"EpsFraction({formatEpsFraction(self)!r})"

    def __str__(self):
        return formatEpsFraction(self)


def _reduce(num, den):
    # cancel common factors, then make den monic
    if not num:
        return _epsRing.zero, _epsRing.one
    if not den.is_ground:
        reduced = _epsField.new(num, den)
        num, den = reduced.numer, reduced.denom
    lc = den.LC
    return num.quo_ground(lc), den.quo_ground(lc)


def _makeReduced(num, den):
    # num/den already reduced with monic den
    self = EpsFraction.__new__(EpsFraction)
    self._num = num
    self._den = den
    return self


def _coerceFraction(value):
    if isinstance(value, EpsFraction):
        return value
    if isinstance(value, (int, Fraction, EpsPoly)):
        return EpsFraction(value)
    return NotImplemented


def formatEpsFraction(value):
    if value.denominator == 1:
        return formatEpsPoly(value.numerator)
    return f"({formatEpsPoly(value.numerator)})/({formatEpsPoly(value.denominator)})"


fractionPat = re.compile(r"\((.*)\)/\((.*)\)$")


def parseEpsFraction(text):
    s = text.strip()
    m = fractionPat.match(s)
    if m is not None:
        return EpsFraction(parseEpsPoly(m.group(1)), parseEpsPoly(m.group(2)))
    return EpsFraction(parseEpsPoly(s))


class RootReport(NamedTuple):
    roots: list  # (root, multiplicity) pairs, ascending
    residual: EpsPoly  # monic, 1 when the polynomial splits over Q


def rationalRoots(poly):
    """All rational roots with multiplicity, read off the linear factors of
    the factorization over Q. The product of the other irreducible factors is
    returned as the residual.
    """
    poly = _coercePoly(poly)
    if poly is NotImplemented:
        raise TypeError(f"not a polynomial: {poly!r}")
    if not poly:
        raise ScalarError("the zero polynomial has no finite root set")
    _, factors = poly._poly.factor_list()
    roots = []
    residual = _epsRing.one
    for factor, multiplicity in factors:
        if factor.degree() == 1:
            linear = EpsPoly._wrap(factor)
            roots.append((-linear.coefficient(0) / linear.coefficient(1), multiplicity))
        else:
            residual = residual * factor**multiplicity
    roots.sort()
    return RootReport(roots, EpsPoly._wrap(residual.monic()))


class PiEpsScalar:
    """The exact quantity coefficient * pi^piExponent * e^epsExponent."""

    __slots__ = ("coefficient", "piExponent", "epsExponent")

    def __init__(self, coefficient, piExponent=0, epsExponent=0):
        coefficient = toRational(coefficient)
        if piExponent < 0 or epsExponent < 0:
            raise ExponentUnderflowError(
                f"negative exponent in pi^{piExponent}*e^{epsExponent}"
            )
        if coefficient == 0:
            piExponent = epsExponent = 0
        self.coefficient = coefficient
        self.piExponent = piExponent
        self.epsExponent = epsExponent

    def __bool__(self):
        return bool(self.coefficient)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiEpsScalar(other)
        if not isinstance(other, PiEpsScalar):
            return NotImplemented
        return (self.coefficient, self.piExponent, self.epsExponent) == (
            other.coefficient,
            other.piExponent,
            other.epsExponent,
        )

    def __hash__(self):
        return hash((self.coefficient, self.piExponent, self.epsExponent))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiEpsScalar(
                self.coefficient * other, self.piExponent, self.epsExponent
            )
        if not isinstance(other, PiEpsScalar):
            return NotImplemented
        return PiEpsScalar(
            self.coefficient * other.coefficient,
            self.piExponent + other.piExponent,
            self.epsExponent + other.epsExponent,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiEpsScalar(other)
        if not isinstance(other, PiEpsScalar):
            return NotImplemented
        return piEpsDiv(self, other)

    def __repr__(self):
        return f"PiEpsScalar({formatPiEps(self)!r})"

    def __str__(self):
        return formatPiEps(self)


def piEpsDiv(a, b):
    if not b:
        raise ScalarDivisionError(f"division of {a} by zero")
    if not a:
        return PiEpsScalar(0)
    piExponent = a.piExponent - b.piExponent
    epsExponent = a.epsExponent - b.epsExponent
    if piExponent < 0 or epsExponent < 0:
        raise ExponentUnderflowError(f"{a} / {b} has a negative exponent")
    return PiEpsScalar(a.coefficient / b.coefficient, piExponent, epsExponent)


piEpsPat = re.compile(r"([+-]?\d+(?:/\d+)?)\*pi\^(\d+)\*e\^(\d+)$")


def formatPiEps(value):
    return (
        f"{formatRational(value.coefficient)}*pi^{value.piExponent}"
        f"*e^{value.epsExponent}"
    )


def parsePiEps(text):
    m = piEpsPat.match(text.replace(" ", ""))
    if m is None:
        raise ScalarParseError(f"not a pi/e monomial: {text!r}")
    coefficient, piExponent, epsExponent = m.groups()
    return PiEpsScalar(parseRational(coefficient), int(piExponent), int(epsExponent))


class GaussianRational:
    """re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = toRational(re)
        self.im = toRational(im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerceGaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = _coerceGaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerceGaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _coerceGaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __repr__(self):
        return f"GaussianRational({formatRational(self.re)}, {formatRational(self.im)})"

    def __str__(self):
        if not self.im:
            return formatRational(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{formatRational(self.re)}{sign}{formatRational(abs(self.im))}*i"


def _coerceGaussian(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return NotImplemented


I = GaussianRational(0, 1)


class RationalField:
    name = "rational"
    isSymbolic = False
    zero = Fraction(0)
    one = Fraction(1)
    domain = QQ

    def coerce(self, value):
        try:
            return toRational(value)
        except TypeError:
            raise ScalarError(f"{value} is not a rational scalar") from None

    def parse(self, text):
        return parseRational(text)

    def format(self, value):
        return formatRational(value)

    def toDomain(self, value):
        return _toQQ(value)

    def fromDomain(self, value):
        return _fromQQ(value)

    def epsMonomial(self, coefficient, exponent, eps=None):
        if not exponent:
            return toRational(coefficient)
        if eps is None:
            raise ScalarError("a rational field needs a value for e")
        return toRational(coefficient) * toRational(eps) ** exponent

    def specialize(self, value, eps):
        return value

    def __repr__(self):
        return "RATIONAL"


class EpsFractionField:
    name = "symbolic-eps"
    isSymbolic = True
    zero = EpsFraction(0)
    one = EpsFraction(1)
    domain = _epsField.to_domain()

    def coerce(self, value):
        if isinstance(value, EpsFraction):
            return value
        if isinstance(value, str):
            return parseEpsFraction(value)
        return EpsFraction(value)

    def parse(self, text):
        return parseEpsFraction(text)

    def format(self, value):
        return formatEpsFraction(value)

    def toDomain(self, value):
        return value.toDomain()

    def fromDomain(self, value):
        return EpsFraction.fromDomain(value)

    def epsMonomial(self, coefficient, exponent, eps=None):
        return EpsFraction(EpsPoly.monomial(coefficient, exponent))

    def specialize(self, value, eps):
        return value.evaluate(eps)

    def __repr__(self):
        return "SYMBOLIC_EPS"


RATIONAL = RationalField()
SYMBOLIC_EPS = EpsFractionField()

fields = {field.name: field for field in [RATIONAL, SYMBOLIC_EPS]}


def getField(name):
    try:
        return fields[name]
    except KeyError:
        raise ScalarError(
            f"unknown scalar mode {name!r}; expected one of {', '.join(fields)}"
        ) from None


def formatScalar(value):
    if isinstance(value, EpsFraction):
        return formatEpsFraction(value)
    if isinstance(value, EpsPoly):
        return formatEpsPoly(value)
    if isinstance(value, PiEpsScalar):
        return formatPiEps(value)
    if isinstance(value, GaussianRational):
        return str(value)
    return formatRational(value)


def isConstantScalar(value):
    if isinstance(value, EpsFraction):
        return value.isConstant()
    return True
