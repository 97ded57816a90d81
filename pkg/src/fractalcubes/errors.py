"""Exception hierarchy shared by the library and the CLI."""


class FractalCubeError(ValueError):
    """Invalid input or a violated operation precondition."""


class DimensionMismatch(FractalCubeError):
    pass


class GuardExceeded(FractalCubeError):
    """A configured size guard would be exceeded; the CLI maps this to exit code 2."""


class ParseError(FractalCubeError):
    pass
