"""Exception types shared across the package."""


class K3Error(Exception):
    """Base class for all package errors."""


class LatticeError(K3Error):
    pass


class NotDefinite(LatticeError):
    pass


class NotRootGenerated(LatticeError):
    pass


class NotASublattice(LatticeError):
    pass


class SurfaceError(K3Error):
    pass


class BranchNotEven(SurfaceError):
    pass


class BranchNotDisjoint(SurfaceError):
    pass


class NotExceptional(SurfaceError):
    pass


class NotAFiber(K3Error):
    pass


class ArrangementError(K3Error):
    """Invalid input arrangement (exit code 1 in the CLI)."""


class DuplicateLine(ArrangementError):
    pass


class ConcurrentTriple(ArrangementError):
    def __init__(self, triple):
        self.triple = tuple(triple)
        i, j, k = (t + 1 for t in self.triple)
        super().__init__("lines %d, %d, %d are concurrent; degenerate "
                         "arrangements are out of scope" % (i, j, k))


class DegenerateFive(ArrangementError):
    pass


class NotKummer(K3Error):
    pass


class NotPencilFree(K3Error):
    pass


class CertificateFailure(K3Error):
    """A claimed identity did not hold (exit code 2 in the CLI)."""


class EulerMismatch(CertificateFailure):
    pass
