"""skewtop: exact and Monte Carlo verifications for the antisymmetric
Gaussian matrix model and the intersection numbers it generates.

Highlights: the N <-> k characteristic-polynomial duality, the SO(2N)
group-integral closed forms, exact inverse-spectral-parameter expansions of
the quartic eigenvalue integral (intersection numbers of 3-spin curves on
non-orientable surfaces), evolution operators with their zero-size replica
limits, and the Airy-stream closed forms for one marked point.
"""

from .airy import (CriticalUSeries, OnePointResult, critical_u_series,
                   half_genus_calibration, one_point_engine,
                   one_point_half_genus, one_point_integer_from_stream,
                   one_point_integer_genus)
from .duality import (DualityInstance, DualityReport, k1_quadrature,
                      lhs_exact, rhs_exact, verify_duality)
from .engine import (IntersectionEntry, IntersectionTable,
                     extract_intersections, free_energy_power_sums,
                     intersection_table, log_series, partition_power_sums,
                     partition_series, to_power_sums)
from .evolution import (cauchy_identity_check, replica_one_point,
                        replica_three_point, replica_two_point,
                        theorem3_series, two_point_sh_form, u1_series,
                        u2_contour_series, u_replica_series,
                        u_replica_series_formal)
from .harish import (haar_sample, haar_sample_batch, hc_determinant_form,
                     hc_identity_exact, hc_ratio, hc_weyl_sum, verify_hc)
from .moments import trace_moment, trace_moment_at
from .oracles import (OracleResult, direct_det_expect, gaussian_moment_1d,
                      mc_reference, median_of_means)
from .rationals import QI, parse_rat, ser_rat
from .series import MultiSeries
from .skew import (GaussianEnsemble, SkewMatrix, SourceSpec, build_canonical,
                   char_poly_avg_exact, pfaffian, sample, sample_batch,
                   trace_moment_exact, wick_moment)

__version__ = "0.1.0"
