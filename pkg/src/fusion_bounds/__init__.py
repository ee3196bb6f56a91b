"""Exact bounds on the total count seen by overlapping sensors."""
from .complex import SimplicialComplex
from .config import MeasurementVector, SensorConfiguration
from .polytope import HPolyhedron, VRepresentation

__all__ = ["SimplicialComplex", "SensorConfiguration", "MeasurementVector",
           "HPolyhedron", "VRepresentation"]
__version__ = "0.1.0"
