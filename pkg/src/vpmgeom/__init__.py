"""Hilbert geometry of the variance-precision bicone ``{X : 0 < X < I}``."""

from .ballgeo import Ball, geodesic_point, seb_badoiu_clarkson
from .domains import ConeElement, VpmPoint, dual_cone_contains, project_to_vpm, sample_vpm, vpm_contains
from .errors import (
    AsymmetryError,
    DegeneratePencilError,
    DimensionError,
    DomainError,
    SolverError,
    VpmError,
)
from .metrics import DistanceReport, airm, birkhoff_pd, hilbert_vpm, hilbert_vpm_eps
from .oracle import birkhoff_bisect, hilbert_cross_ratio
from .transforms import calvo_oller, iota, iota_inv

__version__ = "0.1.0"

__all__ = [
    "AsymmetryError",
    "Ball",
    "ConeElement",
    "DegeneratePencilError",
    "DimensionError",
    "DistanceReport",
    "DomainError",
    "SolverError",
    "VpmError",
    "VpmPoint",
    "airm",
    "birkhoff_bisect",
    "birkhoff_pd",
    "calvo_oller",
    "dual_cone_contains",
    "geodesic_point",
    "hilbert_cross_ratio",
    "hilbert_vpm",
    "hilbert_vpm_eps",
    "iota",
    "iota_inv",
    "project_to_vpm",
    "sample_vpm",
    "seb_badoiu_clarkson",
    "vpm_contains",
]
