"""geoforge: coset incidence systems and the constructions that preserve flag-transitivity."""

from geoforge.common.config import Caps, current_caps, use_caps
from geoforge.common.errors import GeoforgeError
from geoforge.common.reports import CheckReport
from geoforge.cosetgeom.system import CosetSystem

__version__ = "0.1.0"

__all__ = [
    "Caps",
    "CheckReport",
    "CosetSystem",
    "GeoforgeError",
    "__version__",
    "current_caps",
    "use_caps",
]
