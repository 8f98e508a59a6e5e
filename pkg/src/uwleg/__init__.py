"""Hydrodynamic torque modelling and joint-resistance analysis for a
3-DOF underwater leg.

The torque model integrates per-slice quadratic drag and added-mass
forces along each link and adds buoyancy; its linearity in the two
hydrodynamic coefficients drives a least-squares identification from
paired land/underwater torque logs. A separate lab module characterises
viscous and dynamic-seal resistance of a watertight joint from
three-configuration current grids.

The hot gain kernel has a compiled core with a numpy fallback; see
:func:`uwleg.backend.active_backend`.
"""

from .backend import HAS_COMPILED, active_backend
from .fitting import (FitResult, RegressionRows, TorquePairSample,
                      assemble_regression, coefficient_of_determination,
                      fit_hydro_params, hydro_torque_from_measurements)
from .gait import (GaitSpec, NoiseSpec, PairedLog, Trajectory, default_gait,
                   gen_trajectory, load_gait_spec, samples_from_log,
                   synthesize_measurements)
from .geometry import (DEFAULT_PROFILE, EnvParams, LegGeometry, LegState,
                       load_profile, save_profile)
from .kinematics import (SliceKinematics, cos_slice_angle, fk_foot, ik_leg,
                         normal_acceleration, normal_velocity, slice_kinematics,
                         slice_radius)
from .quadrature import QuadratureSpec, integrate
from .resistance import (EfficiencyReport, MonotonicityReport, ResistanceGrid,
                         ResistanceSurface, SensitivityReport, demo_grids,
                         efficiency_report, fit_surface, ingest_grid,
                         monotonicity_check, seal_current, sensitivity_report,
                         viscous_current)
from .torques import (BreakdownTable, HydroCoeffs, TorqueBreakdown,
                      added_mass_torque_joint, batch_breakdown, batch_gains,
                      buoyancy_torque_joint, drag_torque_joint,
                      gain_coefficients, morison_slice_force,
                      single_link_added_mass_torque, single_link_drag_torque,
                      total_hydro_torque)

__version__ = "0.1.0"
