"""Error type shared by every module; the ``code`` attribute is the stable identifier."""

E_DUP_ELEM = "E_DUP_ELEM"
E_UNKNOWN_ELEM = "E_UNKNOWN_ELEM"
E_CYCLE = "E_CYCLE"
E_NOT_COVER = "E_NOT_COVER"
E_NO_BOUND = "E_NO_BOUND"
E_NOT_LATTICE = "E_NOT_LATTICE"
E_INDEX = "E_INDEX"
E_NOT_COMPARABLE = "E_NOT_COMPARABLE"
E_TOO_LARGE = "E_TOO_LARGE"
E_DEGENERATE = "E_DEGENERATE"
E_STALL = "E_STALL"
E_RANGE = "E_RANGE"
E_UNKNOWN_NAME = "E_UNKNOWN_NAME"
E_PRECONDITION = "E_PRECONDITION"
E_SYNTAX = "E_SYNTAX"


class LatticeError(Exception):
    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
