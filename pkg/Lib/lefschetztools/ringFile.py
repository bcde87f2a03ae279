"""Read and write the line oriented ring file format:

    # comment
    name gompfFormal
    scalars rational            # or symbolic-eps
    top 4
    degree 0: one
    degree 1: a1 a2
    ...
    a1 * a2 = q                 # products not listed are zero or follow
    a2 * A1 = -v                # from the sign rule
    omega w
    chern c
    integral chern

Coefficients are rationals ("3/2") or parenthesized scalars ("(1/2*e^1)").
"""

import logging
import os
import re
from .algebra import INTEGRAL_CHERN, AlgebraError, GradedBasis, PDAlgebra, formatElement
from .algebraChecks import checkAxioms
from .scalars import ScalarError, getField


logger = logging.getLogger(__name__)


class RingFileError(Exception):
    def __init__(self, message, line=None, column=None, source=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.source = source

    def __str__(self):
        location = [str(part) for part in (self.source, self.line, self.column) if part]
        if location:
            return f"{':'.join(location)}: {self.message}"
        return self.message


class RingValidationError(RingFileError):
    def __init__(self, message, violations, source=None):
        super().__init__(message, source=source)
        self.violations = violations


namePat = r"[A-Za-z_][A-Za-z0-9_.^]*"
nameRE = re.compile(namePat + "$")
termRE = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?|\((?:[^()]|\([^()]*\))*\))\s*\*\s*)?(" + namePat + r")\s*"
)
productRE = re.compile(r"\s*(" + namePat + r")\s*\*\s*(" + namePat + r")\s*=(.*)$")
degreeRE = re.compile(r"degree\s+(\d+)\s*:(.*)$")
keywordRE = re.compile(r"(name|scalars|top|omega|chern)\s+(.*?)\s*$")

classKeywords = ("omega", "chern")


def parseLinearCombination(text, algebra=None, field=None, basis=None, line=None, offset=0):
    """Parse "w + 3/2*c - (1/2*e^1)*q" into {name: scalar}.

    Unknown names are an error when a basis is given; `offset` is the column of
    text within its line, for error positions.
    """
    if algebra is not None:
        field = algebra.field
        basis = algebra.basis
    if text.strip() == "0":
        return {}
    components = {}
    numTerms = 0
    pos = 0
    while pos < len(text):
        m = termRE.match(text, pos)
        if m is None or (numTerms and m.group(1) is None):
            raise RingFileError(
                f"can't parse term in {text.strip()!r}", line, offset + pos + 1
            )
        sign, coefficientText, name = m.groups()
        if basis is not None and name not in basis:
            raise RingFileError(
                f"unknown basis element '{name}'", line, offset + m.start(3) + 1
            )
        if coefficientText is None:
            coefficient = field.one
        else:
            if coefficientText.startswith("("):
                coefficientText = coefficientText[1:-1]
            try:
                coefficient = field.parse(coefficientText)
            except ScalarError as e:
                raise RingFileError(str(e), line, offset + m.start(2) + 1) from None
        if sign == "-":
            coefficient = -coefficient
        components[name] = components.get(name, field.zero) + coefficient
        numTerms += 1
        pos = m.end()
    if not numTerms:
        raise RingFileError("empty linear combination", line, offset + 1)
    return {name: value for name, value in components.items() if value != 0}


def _stripComment(text):
    index = text.find("#")
    return text if index < 0 else text[:index]


def parseRing(text, source=None, validate=True):
    header = {}
    headerLines = {}
    degreeLines = {}
    productLines = []
    classLines = []
    flags = set()
    for lineNumber, rawLine in enumerate(text.splitlines(), 1):
        line = _stripComment(rawLine).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        m = degreeRE.match(stripped)
        if m is not None:
            degree = int(m.group(1))
            if degree in degreeLines:
                raise RingFileError(f"degree {degree} listed twice", lineNumber, 1, source)
            names = m.group(2).split()
            for name in names:
                if not nameRE.match(name):
                    raise RingFileError(
                        f"invalid basis element name '{name}'",
                        lineNumber,
                        indent + stripped.index(name, m.start(2)) + 1,
                        source,
                    )
            degreeLines[degree] = (names, lineNumber)
            continue
        m = productRE.match(line)
        if m is not None:
            productLines.append((m.group(1), m.group(2), m.group(3), m.start(3), lineNumber))
            continue
        if stripped == "integral chern":
            flags.add(INTEGRAL_CHERN)
            continue
        m = keywordRE.match(stripped)
        if m is not None:
            keyword, value = m.groups()
            if keyword in classKeywords:
                classLines.append((keyword, value, indent + m.start(2), lineNumber))
                continue
            if keyword in header:
                raise RingFileError(f"'{keyword}' given twice", lineNumber, 1, source)
            header[keyword] = value
            headerLines[keyword] = lineNumber
            continue
        raise RingFileError(f"can't parse line: {stripped!r}", lineNumber, indent + 1, source)

    if "top" not in header:
        raise RingFileError("missing 'top' line", source=source)
    try:
        top = int(header["top"])
    except ValueError:
        raise RingFileError(
            f"top degree must be an integer, not {header['top']!r}",
            headerLines["top"],
            5,
            source,
        ) from None
    for degree, (_, lineNumber) in degreeLines.items():
        if degree > top:
            raise RingFileError(f"degree {degree} above top {top}", lineNumber, 1, source)
    try:
        field = getField(header.get("scalars", "rational"))
    except ScalarError as e:
        raise RingFileError(str(e), headerLines.get("scalars"), 9, source) from None
    try:
        basis = GradedBasis([degreeLines.get(d, ([], 0))[0] for d in range(top + 1)])
    except AlgebraError as e:
        raise RingFileError(str(e), source=source) from None
    name = header.get("name")
    if name is None:
        name = os.path.splitext(os.path.basename(source))[0] if source else "ring"

    table = {}
    for a, b, productText, offset, lineNumber in productLines:
        for operand in (a, b):
            if operand not in basis:
                raise RingFileError(
                    f"unknown basis element '{operand}'", lineNumber, 1, source
                )
        if (a, b) in table:
            raise RingFileError(f"product {a} * {b} given twice", lineNumber, 1, source)
        table[a, b] = _parseCombination(productText, field, basis, lineNumber, offset, source)
    classes = {}
    for keyword, value, offset, lineNumber in classLines:
        if keyword in classes:
            raise RingFileError(f"'{keyword}' given twice", lineNumber, 1, source)
        classes[keyword] = _parseCombination(value, field, basis, lineNumber, offset, source)

    try:
        algebra = PDAlgebra(name, basis, table, field, classes, flags)
    except AlgebraError as e:
        raise RingFileError(str(e), source=source) from None
    if validate:
        report = checkAxioms(algebra)
        if not report.passed:
            messages = report.messages()
            raise RingValidationError(
                f"{name} violates the algebra axioms: {messages[0]}"
                + (f" (and {len(messages) - 1} more)" if len(messages) > 1 else ""),
                report.violations,
                source,
            )
    logger.debug(f"parsed {algebra!r}")
    return algebra


def _parseCombination(text, field, basis, lineNumber, offset, source):
    try:
        return parseLinearCombination(text, field=field, basis=basis, line=lineNumber, offset=offset)
    except RingFileError as e:
        e.source = source
        raise


def readRing(path, validate=True):
    with open(path, encoding="utf-8") as f:
        return parseRing(f.read(), source=path, validate=validate)


def emitRing(algebra):
    order = algebra.basis.names
    lines = [
        f"name {algebra.name}",
        f"scalars {algebra.field.name}",
        f"top {algebra.topDegree}",
    ]
    for degree, names in enumerate(algebra.basis.degrees):
        lines.append(f"degree {degree}: {' '.join(names)}".rstrip())
    for (a, b), product in algebra.canonicalTable().items():
        lines.append(f"{a} * {b} = {formatElement(product, order)}")
    for keyword in classKeywords:
        if keyword in algebra.classes:
            lines.append(f"{keyword} {formatElement(algebra.classes[keyword], order)}")
    if INTEGRAL_CHERN in algebra.flags:
        lines.append("integral chern")
    return "\n".join(lines) + "\n"


def writeRing(algebra, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(emitRing(algebra))
