"""Exceptions raised by the vmlab library.

Every error carries a short ``code`` so the command line (and the JSON
records) can report failures without parsing messages.
"""


class VmlabError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def __repr__(self):
        return f"<{self.__class__.__name__} [{self.code}]: {self.message}>"


class ShapeError(VmlabError):
    code = "shape"


class RangeError(VmlabError):
    code = "range"


class VertexError(VmlabError):
    """Operation named a label that is not live in the graph."""

    code = "vertex"


class NoEdgeError(VmlabError):
    """Pivot requested on a non-edge."""

    code = "no-edge"


class LabelError(VmlabError):
    code = "labels"


class NotBasisError(VmlabError):
    code = "not-basis"


class BudgetExceeded(VmlabError):
    """A search or enumeration ran past its configured budget."""

    code = "budget"


class OrbitCapExceeded(BudgetExceeded):
    code = "cap"


class ReorderError(VmlabError):
    code = "reorder"


class ConfigError(VmlabError):
    code = "config"
