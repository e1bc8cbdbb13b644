"""Grid-rounding approximation of the diameter of a point set in R^d."""
__version__ = "0.1.0"

from .directional import (
    agarwal_diameter,
    chan_diameter,
    chan_recursive_diameter,
    planar_angle_net,
    project_extent,
    sphere_direction_net,
    two_approx_baseline,
)
from .errors import InvariantError, ParseError, UsageError
from .estimate import DiameterEstimate
from .exact import brute_force_diameter, diametrical_pairs
from .generators import generate
from .geometry import BoundingBox, PointSet, bounding_box, distance_sq, largest_side
from .pipeline import PhaseStats, approximate_diameter
from .pointio import read_points, write_points

__all__ = [
    "BoundingBox",
    "DiameterEstimate",
    "InvariantError",
    "ParseError",
    "PhaseStats",
    "PointSet",
    "UsageError",
    "agarwal_diameter",
    "approximate_diameter",
    "bounding_box",
    "brute_force_diameter",
    "chan_diameter",
    "chan_recursive_diameter",
    "diametrical_pairs",
    "distance_sq",
    "generate",
    "largest_side",
    "planar_angle_net",
    "project_extent",
    "read_points",
    "sphere_direction_net",
    "two_approx_baseline",
    "write_points",
]
