#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Exceptions"""


class DimensionMismatchError(Exception):
    """
    Exception raised when operands have incompatible dimensions
    """

    def __init__(self, message):
        message = "Dimension mismatch: " + message
        super().__init__(message)


class InvalidStateError(Exception):
    """
    Exception raised when a matrix or a Bloch vector is not a valid
    quantum state
    """

    def __init__(self, message):
        message = "Invalid quantum state: " + message
        super().__init__(message)


class ParameterRangeError(Exception):
    """
    Exception raised when a physical parameter is outside its allowed range
    """

    def __init__(self, message):
        message = "Parameter out of range: " + message
        super().__init__(message)


class InsufficientDataError(Exception):
    """
    Exception raised when a statistic cannot be estimated from the
    available samples
    """

    def __init__(self, message):
        message = "Insufficient data: " + message
        super().__init__(message)


class InvalidHistogramError(Exception):
    """
    Exception raised when histogram edges or histograms to be merged
    are inconsistent
    """

    def __init__(self, message):
        message = "Invalid histogram: " + message
        super().__init__(message)


class ConfigurationError(Exception):
    """
    Exception raised when an experiment configuration violates one or
    more constraints. Every problem is kept as a (field path, message) pair.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        message = "Invalid configuration: " + "; ".join(
            f"{path}: {text}" for path, text in self.problems
        )
        super().__init__(message)
