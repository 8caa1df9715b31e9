"""Symbol tables: which even and odd variable names exist, and in what order."""

from __future__ import annotations

import re

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Ambient:
    """An ordered table of even and odd symbol names.

    Every polynomial and fraction is relative to one ambient; mixing values
    from different ambients is a dimension error.  Instances are immutable.
    """

    __slots__ = ("even", "odd", "_even_index", "_odd_index")

    def __init__(self, even, odd):
        even = tuple(even)
        odd = tuple(odd)
        seen = set()
        for name in even + odd:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad symbol name: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate symbol name: {name!r}")
            seen.add(name)
        object.__setattr__(self, "even", even)
        object.__setattr__(self, "odd", odd)
        object.__setattr__(self, "_even_index", {n: i for i, n in enumerate(even)})
        object.__setattr__(self, "_odd_index", {n: i for i, n in enumerate(odd)})

    def __setattr__(self, name, value):
        raise AttributeError("Ambient is immutable")

    @property
    def m(self) -> int:
        return len(self.even)

    @property
    def n(self) -> int:
        return len(self.odd)

    def even_index(self, name: str) -> int:
        return self._even_index[name]

    def odd_index(self, name: str) -> int:
        return self._odd_index[name]

    def parity_of(self, name: str):
        """Return 'even' or 'odd', or raise KeyError."""
        if name in self._even_index:
            return "even"
        if name in self._odd_index:
            return "odd"
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return name in self._even_index or name in self._odd_index

    def __eq__(self, other):
        return isinstance(other, Ambient) and self.even == other.even and self.odd == other.odd

    def __hash__(self):
        return hash((self.even, self.odd))

    def __repr__(self):
        return f"Ambient(even={list(self.even)}, odd={list(self.odd)})"
