"""Latin square graphs and pursuit-evasion games.

Construction and validation of latin squares, MOLS sets, and orthogonal
arrays; their cell graphs; and executable strategies, exact solvers, and
bound reports for Cops and Robbers, metric dimension, and the localization
game on those graphs.
"""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
