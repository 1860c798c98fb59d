"""Obstruction groups of the Hasse norm principle from Galois data.

The heavy lifting lives in the _normknot extension module; this package
re-exports its surface.
"""

from _normknot import (  # noqa: F401
    analyze,
    build,
    group_info,
    set_group_order_cap,
    verify_extremal,
    verify_isomorphisms,
    verify_pairs,
    __version__,
)

__all__ = [
    "analyze",
    "build",
    "group_info",
    "set_group_order_cap",
    "verify_extremal",
    "verify_isomorphisms",
    "verify_pairs",
]
