"""Exception types raised across the package."""


class SignedGraphError(ValueError):
    """Malformed graph input (bad vertex id, parallel edge, negative loop)."""


class ParseError(SignedGraphError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NegativeDigon(SignedGraphError):
    """Contraction would create two parallel edges of opposite sign."""


class EdgeNotPositive(SignedGraphError):
    pass


class CapExceeded(ValueError):
    """Instance is larger than the configured exhaustive-enumeration cap."""


class BadBlock(ValueError):
    """Input violates the block precondition of the degree-demand coloring."""

    def __init__(self, blocks):
        self.blocks = blocks
        desc = ", ".join(f"{kind}:{sorted(b)}" for b, kind in blocks)
        super().__init__(f"forbidden blocks present: {desc}")


class InternalError(RuntimeError):
    """A construction step produced something the verifier rejects."""
