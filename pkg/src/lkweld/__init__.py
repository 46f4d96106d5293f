"""Asymptotic conformal welding of near-circular domains under Loewner-Kufarev evolution."""
from .asymptotics import (
    WeldingRecord,
    exterior_map_asymptotic,
    first_order_welding,
    interior_map_asymptotic,
    welding_asymptotic,
)
from .caratheodory import (
    DrivingFunction,
    ExteriorDriving,
    Term,
    check_caratheodory,
    eval_p,
    eval_p_derivs,
    reflect_p_star,
)
from .convergence import ConvergenceFit, fit_order
from .curve import AnalyticTestMap, BoundaryCurve
from .evolution import (
    EvolutionConfig,
    EvolutionResult,
    evolve_boundary,
    integrate_characteristic,
    regularity_ratios,
    star_angle_defect,
)
from .homeo import CircleHomeo
from .oracle import MapSolution, lebedev_check, solve_exterior, solve_interior, true_welding
from .parsing import parse_delta, parse_driving
from .trig import TrigSeries, analyze, conjugate_pv, pv_quadrature, schwarz_integral, synthesize

__version__ = "0.1.0"
