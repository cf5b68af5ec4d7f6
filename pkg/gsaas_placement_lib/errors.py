# -*- coding: utf-8 -*-

"""ERRORS

This module defines the exceptions raised by the gsaas_placement library.
Each class maps to one exit code of the executable script.

"""


class InputError(ValueError):
    """Input error

    Raised for malformed catalogues, contact files and scenario files.

    """

    exit_code = 4


class InfeasibleError(RuntimeError):
    """Infeasible problem

    Raised when a minimum maximum-gap schedule cannot be built because a
    satellite has no contact with the selected stations.

    """

    exit_code = 2


class BudgetExceededError(RuntimeError):
    """Enumeration budget exceeded

    Raised when the exact solver would need to enumerate more station subsets
    than allowed. Use the scalable pipeline instead.

    """

    exit_code = 3


class ConvergenceError(RuntimeError):
    """Kepler equation did not converge"""

    exit_code = 1


class StageError(RuntimeError):
    """Pipeline stage error

    Wraps an exception raised inside a pipeline stage.

    Parameters
    ----------
    stage : str
        Name of the stage that failed
    err : Exception
        Original exception

    """

    def __init__(self, stage, err):

        self.stage = stage
        self.err = err
        self.exit_code = getattr(err, 'exit_code', 1)
        super(StageError, self).__init__('[{}] {}'.format(stage, err))
