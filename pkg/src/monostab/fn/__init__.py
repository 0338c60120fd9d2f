"""Fox-Neuwirth cell complexes for configuration spaces of R^d."""

from __future__ import annotations

from .cells import FNCell, cells_by_degree, faces
from .complex import (
    ChainMapError,
    ConfigSpec,
    FNComplex,
    StabilisationMap,
    fn_complex,
    homology_config,
    stab_chain_map,
)
from .e2 import E2Page, StabilityCell, StabilityReport, e2_page, e2_stability_report

__all__ = [
    "ChainMapError",
    "ConfigSpec",
    "E2Page",
    "FNCell",
    "FNComplex",
    "StabilisationMap",
    "StabilityCell",
    "StabilityReport",
    "cells_by_degree",
    "e2_page",
    "e2_stability_report",
    "faces",
    "fn_complex",
    "homology_config",
    "stab_chain_map",
]
