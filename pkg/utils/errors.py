# utils/errors.py

from typing import Any, Optional

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class LGLError(Exception):
    """
    Base error: carries a readable detail and the exit code the CLI reports.
    `field` names the offending input (a file path such as "table.1" or a flag) when known.
    """

    exit_code = EXIT_INPUT

    def __init__(self, detail: str, field: Optional[str] = None):
        super().__init__(detail)
        self.detail = detail
        self.field = field


class InputError(LGLError):
    pass


# --- lattices ---

class UnknownElement(InputError):
    def __init__(self, element: Any, where: str = ""):
        where = f" in {where}" if where else ""
        super().__init__(f"unknown element {element!r}{where}")
        self.element = element


class DuplicateElement(InputError):
    def __init__(self, element: Any):
        super().__init__(f"duplicate element {element!r}")
        self.element = element


class OrderCycle(InputError):
    def __init__(self, x: str, y: str):
        super().__init__(f"order is not antisymmetric: {x} <= {y} and {y} <= {x}")
        self.pair = (x, y)


class NoMeet(InputError):
    def __init__(self, x: str, y: str):
        super().__init__(f"not a lattice: no meet for ({x}, {y})")
        self.pair = (x, y)


class NoJoin(InputError):
    def __init__(self, x: str, y: str):
        super().__init__(f"not a lattice: no join for ({x}, {y})")
        self.pair = (x, y)


class NotComparable(InputError):
    def __init__(self, lo: str, hi: str):
        super().__init__(f"{lo} is not below {hi}")


class LatticeTooLarge(InputError):
    pass


class NotDistributive(InputError):
    pass


class NotAChain(InputError):
    pass


# --- groups ---

class NotClosedTable(InputError):
    pass


class NoIdentity(InputError):
    pass


class NoInverse(InputError):
    pass


class NotAssociative(InputError):
    pass


class BadPermutation(InputError):
    pass


class OrderCap(InputError):
    pass


class NotAHomomorphism(InputError):
    pass


# --- L-subsets and L-subgroups ---

class LatticeMismatch(InputError):
    pass


class CarrierMismatch(InputError):
    pass


class NotAnLSubgroup(InputError):
    pass


class NotContained(InputError):
    pass


class TipEqualsTail(InputError):
    pass


class PointNotInside(InputError):
    pass


class NoWitness(InputError):
    pass


# --- files and command line ---

class FixtureNotFound(InputError):
    pass


class BadPointSyntax(InputError):
    pass


class UnknownSuite(InputError):
    def __init__(self, suite_id: str):
        super().__init__(f"unknown suite {suite_id!r} (see `lgl verify --list`)", field="suite")
        self.suite_id = suite_id


class BudgetExceeded(LGLError):
    """Raised when an enumeration runs out of budget; `partial` holds what was found."""

    exit_code = EXIT_BUDGET

    def __init__(self, detail: str, partial: Optional[Any] = None, field: Optional[str] = None):
        super().__init__(detail, field)
        self.partial = partial
