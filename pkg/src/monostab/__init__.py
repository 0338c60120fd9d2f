"""Exact computations for homological stability of Gibbons-Manton torus bundles."""

from __future__ import annotations

__version__ = "0.1.0"
