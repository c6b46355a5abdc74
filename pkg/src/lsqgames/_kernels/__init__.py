"""Kernel selection: compiled extension if built, numpy fallback otherwise.

Set LSQGAMES_PURE=1 to force the fallback (used by the benchmark to compare
the two implementations).
"""

import os

if os.environ.get("LSQGAMES_PURE"):
    from .fallback import solve_cop_game

    BACKEND = "python"
else:
    try:
        from ._copgame import solve_cop_game  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        from .fallback import solve_cop_game

        BACKEND = "python"

__all__ = ["solve_cop_game", "BACKEND"]
