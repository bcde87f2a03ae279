import os
import re
from .algebra import UNIT_NAME, GradedBasis, PDAlgebra
from .ringFile import RingFileError, parseRing, readRing


# Symplectic class w kills H^1, while the integral class c maps H^1
# isomorphically onto H^3. b1 = 2 is the smallest first Betti number allowing
# this: c.a1.a2 != 0 forces q = a1.a2 != 0 with c.q = v.
GOMPF_FORMAL = """\
name gompfFormal
scalars rational
top 4
degree 0: one
degree 1: a1 a2
degree 2: w c q
degree 3: A1 A2
degree 4: v
a1 * a2 = q
a1 * c = A1
a2 * c = A2
w * w = v
c * q = v
a1 * A2 = v
a2 * A1 = -v
omega w
chern c
integral chern
"""

# same, with c^2 = v
GOMPF_VARIANT = GOMPF_FORMAL.replace(
    "name gompfFormal", "name gompfVariant"
).replace("c * q = v\n", "c * c = v\nc * q = v\n")


def gompfFormal():
    return parseRing(GOMPF_FORMAL, source="<gompfFormal>")


def gompfVariant():
    return parseRing(GOMPF_VARIANT, source="<gompfVariant>")


def projectiveSpace(n, generator="h", name=None):
    """Q[h]/(h^(n+1)) with h in degree 2."""
    if n < 0:
        raise ValueError(f"no projective space of dimension {n}")

    def powerName(j):
        if j == 0:
            return UNIT_NAME
        return generator if j == 1 else f"{generator}^{j}"

    degrees = [[powerName(d // 2)] if d % 2 == 0 else [] for d in range(2 * n + 1)]
    table = {
        (powerName(i), powerName(j)): {powerName(i + j): 1}
        for i in range(1, n + 1)
        for j in range(i, n + 1 - i)
    }
    return PDAlgebra(
        f"CP{n}" if name is None else name,
        GradedBasis(degrees),
        table,
        classes={"omega": {powerName(1): 1}} if n else {},
    )


def sphere():
    return projectiveSpace(1, generator="s", name="S2")


def productWithSphere(base):
    """base (x) H*(S^2), with the product class omega_B (x) 1 + 1 (x) s."""
    unitName = base.basis.unitName

    def productName(name, j):
        if j == 0:
            return name
        return "s" if name == unitName else f"{name}.s"

    degrees = []
    origin = {}
    for degree in range(base.topDegree + 3):
        names = []
        for j in range(2):
            for name in base.basis.namesInDegree(degree - 2 * j):
                origin[productName(name, j)] = (name, j)
                names.append(productName(name, j))
        degrees.append(names)
    basis = GradedBasis(degrees)

    table = {}
    names = [name for name in basis.names if name != basis.unitName]
    for i, a in enumerate(names):
        for b in names[i:]:
            baseA, jA = origin[a]
            baseB, jB = origin[b]
            if jA + jB > 1:
                continue
            product = base.basisProduct(baseA, baseB)
            if product:
                table[a, b] = {
                    productName(name, jA + jB): v for name, v in product.components.items()
                }

    classes = {}
    if "omega" in base.classes:
        omega = dict(base.classes["omega"].components)
        omega["s"] = base.field.one
        classes["omega"] = omega
    return PDAlgebra(f"{base.name}xS2", basis, table, base.field, classes)


fixtures = {
    "gompfFormal": gompfFormal,
    "gompfVariant": gompfVariant,
    "S2": sphere,
}

projectiveSpaceRE = re.compile(r"CP(\d+)$")


def resolveRing(nameOrPath, validate=True):
    """A ring file path, a fixture name, CP<n>, or <ring>xS2. Ring files are
    checked against the algebra axioms unless `validate` is false.
    """
    if os.path.isfile(nameOrPath):
        return readRing(nameOrPath, validate=validate)
    if nameOrPath in fixtures:
        return fixtures[nameOrPath]()
    m = projectiveSpaceRE.match(nameOrPath)
    if m is not None:
        return projectiveSpace(int(m.group(1)))
    if nameOrPath.endswith("xS2") and len(nameOrPath) > 3:
        return productWithSphere(resolveRing(nameOrPath[:-3], validate))
    raise RingFileError(
        f"unknown ring {nameOrPath!r}: not a file, nor one of "
        f"{', '.join(fixtures)}, CP<n>, <ring>xS2"
    )
