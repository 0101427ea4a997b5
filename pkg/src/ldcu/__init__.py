"""Finite-volume central-upwind solvers for the 1-D and 2-D Euler equations."""
from .euler import AdmissibilityError, GasModel
from .flux import Flavor
from .integrator import IntegratorConfig, SchemeConfig, run
from .kernels import BACKEND
from .mesh import BC, BoundarySpec, Grid1D, Grid2D
from .problems import PROBLEMS, get_problem

__version__ = "0.1.0"
