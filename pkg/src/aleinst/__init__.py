"""Exact equivariant instanton partition functions on A-type ALE spaces.

Series are graded in q with exact rational (or rational-function) coefficients,
assembled by localization over torus-fixed points.
"""

from aleinst.ale import AleParams, SectorSeries, z_ale, z_ale_sector, z_vw
from aleinst.kernels import BACKEND
from aleinst.nekrasov import z_c2

__version__ = "0.1.0"

__all__ = ["AleParams", "BACKEND", "SectorSeries", "z_ale", "z_ale_sector", "z_c2", "z_vw", "__version__"]
