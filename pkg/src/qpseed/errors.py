"""Error hierarchy shared by the whole package.

Every error carries a short machine-readable ``code`` so the CLI and the
HTTP layer can emit structured JSON instead of bare text.
"""


class QPSeedError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"

    def payload(self):
        return {"type": self.code, "message": str(self)}


class BraidSyntaxError(QPSeedError):
    code = "braid-syntax"


class InputError(QPSeedError):
    """Malformed structured input (JSON documents, bad references)."""

    code = "bad-input"


class PreconditionError(QPSeedError):
    """A documented operation precondition does not hold."""

    code = "precondition"


class ReductionError(QPSeedError):
    """A requested 2-cycle reduction does not stabilize below the cap."""

    code = "no-reduction"


class ConsistencyError(QPSeedError):
    """Two routes that must agree (quiver vs. matrix mutation) disagree."""

    code = "mismatch"


class CertificateError(QPSeedError):
    """A certificate check failed: a reduced quiver exposed a 2-cycle."""

    code = "certificate-fail"

    def __init__(self, message, step=None, cycle=None):
        super().__init__(message)
        self.step = step
        self.cycle = cycle

    def payload(self):
        out = super().payload()
        if self.step is not None:
            out["step"] = self.step
        if self.cycle is not None:
            out["cycle"] = list(self.cycle)
        return out
