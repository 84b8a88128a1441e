"""r-WCDS role assignment for multi-channel wireless mesh networks.

Thin Python layer over the C++ core: graph generation, role assignment
(potatoes / opt / st / mis), the max-min throughput LP, the cluster-tree
protocol simulation, and the evaluation metrics.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
