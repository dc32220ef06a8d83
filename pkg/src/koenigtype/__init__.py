"""König-type ideals: detection, special systems of parameters and Cohen-Macaulay tests."""

from __future__ import annotations

__version__ = "0.1.0"
