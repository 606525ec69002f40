from __future__ import annotations


class PisGraphError(Exception):
    """Base class for all errors raised by the package."""


class RingSpecError(PisGraphError, ValueError):
    """A ring-spec string or object is malformed."""


class SpecSyntaxError(RingSpecError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class SpecSemanticError(RingSpecError):
    pass


class RingBuildError(PisGraphError):
    """Construction of a finite ring failed."""


class OrderCapError(RingBuildError):
    pass


class TableFormatError(RingBuildError):
    pass


class AxiomError(RingBuildError):
    def __init__(self, axiom: str, witnesses: tuple[int, ...]):
        self.axiom = axiom
        self.witnesses = tuple(witnesses)
        names = "abc"[: len(self.witnesses)]
        detail = ", ".join(f"{n}={w}" for n, w in zip(names, self.witnesses))
        super().__init__(f"ring axiom '{axiom}' fails for {detail}" if detail else f"ring axiom '{axiom}' fails")


class IdealCapError(PisGraphError):
    pass


class GraphSizeError(PisGraphError, ValueError):
    pass


class RecognitionDisagreement(PisGraphError):
    """The forbidden-subgraph scan and the Krausz search gave different answers."""


class LibraryError(PisGraphError):
    pass
