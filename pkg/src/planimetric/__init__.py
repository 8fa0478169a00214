"""Invariant distances and metrics of planar domains.

Bergman, Kobayashi and Caratheodory distances on discs, conformal images of
the disc, annuli and the punctured disc, plus a harness that checks two-sided
estimates between them on seeded samples.
"""
__version__ = "0.1.0"

from ._kernels import BACKEND
from .disc import (BoundPair, Case, bergman_disc, bergman_metric_disc, eq2_residual,
                   geodesic_arc, kobayashi_disc, lemma4a_bounds, lemma4b_bounds, mobius,
                   prop1prime_classify, pseudo_hyperbolic, sharpness_ratio_a, sharpness_ratio_b)
from .distances import (Curve, DistanceEstimate, MetricField, Method, bergman_distance,
                        bergman_metric_field, caratheodory_distance, disc_geodesic_curve,
                        graph_geodesic, integrate_metric, kobayashi_distance)
from .domains import (Annulus, ConformalDomain, Disc, Domain, PuncturedDisc, domain_from_spec,
                      domain_to_spec, evaluate_map, inverse_map, pushforward_bergman_metric)
from .errors import *  # noqa: F401,F403
from .geometry import BoundaryPolyline, boundary_polyline, contains, dist_to_boundary
from .kernel import (KernelDiagnostics, OrthonormalBasis, annulus_bergman_metric,
                     annulus_kernel_diag, bergman_metric_numeric, build_basis, kernel_diag,
                     kernel_diagnostics, kernel_value, m_invariant)
from .verify import (Certificate, SamplePlan, corollary2_gap, isolated_point_check,
                     lemma4_enclosure, lemma4_sharpness_sweep, monotonicity_check,
                     prop1_certificate, prop3_sweep, remark_d_limit)
