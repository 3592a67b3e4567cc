"""Exception types shared across the package.

Construction errors carry the violating witnesses so that failures are
auditable (e.g. the exact triple breaking associativity).
"""


class XModLabError(Exception):
    """Base class for all package errors."""


class NotAssociative(XModLabError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"table not associative at (a,b,c)={triple}")


class NoIdentity(XModLabError):
    def __init__(self):
        super().__init__("table has no two-sided identity")


class NoInverse(XModLabError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotAHomomorphism(XModLabError):
    def __init__(self, pair, detail=""):
        self.pair = pair
        msg = f"map is not a homomorphism: violated at (a,b)={pair}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotNormal(XModLabError):
    def __init__(self, detail):
        super().__init__(f"subgroup/subcrossed module not normal: {detail}")


class SizeLimitExceeded(XModLabError):
    def __init__(self, what, limit):
        self.what = what
        self.limit = limit
        super().__init__(f"size limit exceeded for {what} (cap {limit})")


class CM1Violation(XModLabError):
    def __init__(self, b, t):
        self.witness = (b, t)
        super().__init__(f"CM1 fails at (b,t)=({b},{t}): boundary of the "
                         f"acted element differs from the conjugate")


class CM2Violation(XModLabError):
    def __init__(self, s, t):
        self.witness = (s, t)
        super().__init__(f"CM2 (Peiffer) fails at (t,s)=({t},{s})")


class NotExact(XModLabError):
    def __init__(self, level, stage):
        self.level = level
        self.stage = stage
        super().__init__(f"sequence not exact: {stage} at level {level}")


class NotComposable(XModLabError):
    pass


class NotWellDefined(XModLabError):
    """Induced morphism on quotient classes is inconsistent.

    This contradicts functoriality of a localization, so it signals an
    implementation bug rather than a mathematical outcome.
    """


class ConditionFails(XModLabError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"fiberwise condition fails at (x2,t1)={witness}")


class StageAssertionFailed(XModLabError):
    def __init__(self, stage, which):
        self.stage = stage
        self.which = which
        super().__init__(f"ladder stage {stage}: {which} assertion failed")


class ParseError(XModLabError):
    pass


class ValidationError(XModLabError):
    def __init__(self, name, detail):
        self.object_name = name
        super().__init__(f"{name}: {detail}")
