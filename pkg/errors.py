# errors.py - exceptions carrying the CLI exit code


class VirtuaError(Exception):
    """Base error: `exit_code` is what the CLI returns, `detail` what it prints"""
    exit_code = 2

    def __init__(self, detail: str, exit_code: int = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class InputError(VirtuaError):
    exit_code = 2


class DegreeOfZero(InputError):
    def __init__(self, detail: str = "the zero polynomial has no multidegree"):
        super().__init__(detail)


class NotHomogeneous(InputError):
    pass


class NotAComplex(InputError):
    def __init__(self, detail: str, index: int = None, witness: str = None):
        super().__init__(detail)
        self.index = index
        self.witness = witness


class PreconditionFailed(InputError):
    pass


class ResourceCapExceeded(VirtuaError):
    exit_code = 3


class PartialResolution(ResourceCapExceeded):
    """Raised when a resolution does not terminate within maxlen; keeps the prefix"""

    def __init__(self, detail: str, prefix=None):
        super().__init__(detail)
        self.prefix = prefix
