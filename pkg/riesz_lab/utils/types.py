from __future__ import annotations


class ArgNotSet:
    """A type used to indicate that an argument was not set."""

    def __repr__(self) -> str:
        return "NOTSET"


NOTSET = ArgNotSet()
