"""Cheating-probability SDPs for two-party quantum protocol switches.

The heavy lifting lives in the compiled extension; this package re-exports
the operations most sessions need:

    >>> import cheatlab
    >>> cheatlab.solve("bc_alice")["value"]
    0.75
"""

from cheatlab._core import (
    completeness_check,
    describe,
    export_sdpa,
    honest_distribution,
    models,
    protocols,
    reproduce,
    solve,
    verify,
)

__all__ = [
    "completeness_check",
    "describe",
    "export_sdpa",
    "honest_distribution",
    "models",
    "protocols",
    "reproduce",
    "solve",
    "verify",
]
