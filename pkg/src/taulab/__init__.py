"""Exact-arithmetic toolkit for Hurwitz numbers, psi-class brackets, Hodge
integrals, and bilinear integrable-hierarchy verification.

Everything is computed over rational numbers; there is no floating point
anywhere.  The main entry points:

* ``hurwitz``: one-part and simple Hurwitz numbers by independent routes
  (brute-force factorization counting, character sums, closed hook series)
  and their generating series.
* ``pic``: bracket values extracted from one-part numbers, the triangular
  change of variables, string/dilaton checks, and tau-function residuals.
* ``hierarchy``: partition operators D_mu, Hirota / KP / linearized KP
  residuals, the cut-and-join operator and the corner-bite calculus.
* ``hodge``: single-lambda Hodge integrals from simple numbers by grid
  interpolation, by the change-of-variables transform, and by the
  conjugated finite equations; the L / l operator calculus.
* ``cli``: the ``tau-lab`` command line front end.
"""

from .series import Series, Rat, FAMILY_P, FAMILY_TQ, FAMILY_TU
from .partitions import (Partition, partitions_of, partitions_upto, aut_order,
                         zee, class_size, hook, cut_and_join_eigenvalue)
from .symfunc import character, dimension, schur_poly, power_to_schur
from .diffops import DPoly, TOp, ZOp
# the dispatching hurwitz() lives in taulab.hurwitz; importing it here would
# shadow the submodule attribute of the same name
from .hurwitz import (HurwitzQuery, ONEPART, SIMPLE,
                      hurwitz_bruteforce, hurwitz_frobenius, hurwitz_closed,
                      h_onepart_series, h_simple_series)
from .hierarchy import (d_mu, hirota_residual, kp_residual, lkp_residual,
                        cut_and_join)
from .pic import bracket, f_series, u_series, u_hierarchy_residuals
from .hodge import a_coeff, hurwitz_to_hodge, f_moduli

__all__ = [
    "Series", "Rat", "FAMILY_P", "FAMILY_TQ", "FAMILY_TU",
    "Partition", "partitions_of", "partitions_upto", "aut_order", "zee",
    "class_size", "hook", "cut_and_join_eigenvalue",
    "character", "dimension", "schur_poly", "power_to_schur",
    "DPoly", "TOp", "ZOp",
    "HurwitzQuery", "ONEPART", "SIMPLE", "hurwitz_bruteforce",
    "hurwitz_frobenius", "hurwitz_closed", "h_onepart_series",
    "h_simple_series",
    "d_mu", "hirota_residual", "kp_residual", "lkp_residual", "cut_and_join",
    "bracket", "f_series", "u_series", "u_hierarchy_residuals",
    "a_coeff", "hurwitz_to_hodge", "f_moduli",
]
