"""Exception types shared across the package."""


class WctetError(Exception):
    """Base class for all package errors."""


class DegenerateSimplex(WctetError):
    """Simplex is collapsed (collinear triangle or coplanar tetrahedron)."""


class DegenerateTet(DegenerateSimplex):
    """A mesh element has (near-)zero volume.  Carries the tet index."""

    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


class IndexOutOfRange(WctetError):
    pass


class DuplicateTet(WctetError):
    pass


class NotConforming(WctetError):
    pass


class InvalidSlide(WctetError):
    """Slide parameter outside [0, 1/2)."""


class InvalidParams(WctetError):
    """Construction parameters geometrically infeasible."""


class DegenerateParams(InvalidParams):
    """Lattice or extent parameters that collapse the construction."""


class InvertedElement(WctetError):
    """An optimization step would have created a negative-volume tet."""


class AllCoplanar(WctetError):
    pass


class TooFewPoints(WctetError):
    pass


class ParseError(WctetError):
    """Mesh file syntax error.  Carries the 1-based line number."""

    def __init__(self, msg, line=None):
        if line is not None:
            msg = "line %d: %s" % (line, msg)
        super().__init__(msg)
        self.line = line
