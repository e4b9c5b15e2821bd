"""Reidemeister torsion of twist knot complements and their Dehn surgeries."""

from .chebyshev import det_sum_ratio, p_cheb, s_cheb, twist_ratio
from .fox import (GroupRingElement, Word, evaluate, format_word, fox_derivative, johnson_torsion,
                  parse_word, reverse_word, twist_relator)
from .riley import (PolyC, RileyPoint, rho_a, rho_b, rho_w, rho_w_pow, riley_eval,
                    riley_poly_in_u, riley_roots)
from .sl2 import geom_sum, mat_pow, mul
from .surgery import (Slope, SurgeryRep, extension_check, rho_longitude, solve_surgery_reps,
                      torsion_surgery, torsion_surgery_dehn, trace_longitude)
from .torsion import (TorsionReport, omega_det, omega_trace, torsion_complement, torsion_fox,
                      torsion_report)

__version__ = "0.1.0"
