"""foamcalc: Tait colorings, planar web reduction, mod-2 foam evaluation
and the homological algebra around them."""

from .foams import (Foam, cancel_tetra_pair, closed_surface, cone, disk_cap,
                    dotted_sphere, euler_characteristic, glue,
                    identity_matching, seam_graph, suspension, theta_foam,
                    theta_half, validate_foam, validate_prefoam)
from .jflat import (evaluate, evaluate_closed_surface, pairing_rank,
                    well_definedness_report)
from .planar import (RotationWeb, check_conjecture, faces, reduce_dimension,
                     rotation_web)
from .webs import (Web, find_bridges, o2_coloring_exists, tait_count,
                   tait_orbit_count, two_factors, validate_web, web)

__version__ = "0.1.0"

__all__ = [
    "Foam", "RotationWeb", "Web", "cancel_tetra_pair", "check_conjecture",
    "closed_surface", "cone", "disk_cap", "dotted_sphere", "evaluate",
    "evaluate_closed_surface", "euler_characteristic", "faces",
    "find_bridges", "glue", "identity_matching", "o2_coloring_exists",
    "pairing_rank", "reduce_dimension", "rotation_web", "seam_graph",
    "suspension", "tait_count", "tait_orbit_count", "theta_foam",
    "theta_half", "two_factors", "validate_foam", "validate_prefoam",
    "validate_web", "web", "well_definedness_report",
]
