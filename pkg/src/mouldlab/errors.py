class MouldlabError(Exception):
    pass


class ArityMismatch(MouldlabError, ValueError):
    pass


class DenominatorVanishes(MouldlabError, ZeroDivisionError):
    pass


class SideMismatch(MouldlabError, ValueError):
    pass


class BadEmptyValue(MouldlabError, ValueError):
    pass


class OrderInsufficient(MouldlabError, ArithmeticError):
    pass


class InvalidDecomposition(MouldlabError, ValueError):
    pass


class AlphabetMismatch(MouldlabError, ValueError):
    pass


class NotInKernel(MouldlabError, ValueError):
    pass


class NotConstant(MouldlabError, ValueError):
    pass


class Inapplicable(MouldlabError, ValueError):
    pass


class Infeasible(MouldlabError, ArithmeticError):
    pass


class HypothesisViolation(MouldlabError, ValueError):
    pass
