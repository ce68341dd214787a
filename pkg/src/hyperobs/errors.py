"""Exception types shared across the package.

Input problems raise the builtin ValueError or IndexError. Work that would
exceed a configured size or iteration budget raises ResourceLimitError so
callers (and the command line driver) can tell "bad input" apart from
"too big to run".
"""

from __future__ import annotations


class ResourceLimitError(RuntimeError):
    """A computation was refused because it exceeds a configured budget."""
