#!/usr/bin/env python3


class BarbellError(Exception):
    pass


class ParamsError(BarbellError, ValueError):
    pass


class OddN(ParamsError):
    pass


class NTooSmall(ParamsError):
    pass


class NegativeWeight(ParamsError):
    pass


class NonPositiveGamma(ParamsError):
    pass


class BadMarkedIndex(ParamsError):
    pass


class DimensionMismatch(ParamsError):
    pass


class NotNormalized(ParamsError):
    pass


class NotHermitian(ParamsError):
    pass


class RegimeMismatch(ParamsError):
    pass


class CapExceeded(ParamsError):
    pass


class NumericError(BarbellError, ArithmeticError):
    pass


class ConvergenceFailure(NumericError):
    pass


class NoPeakFound(NumericError):
    pass


class NotDegenerate(NumericError):
    pass


class UsageError(BarbellError):
    pass
