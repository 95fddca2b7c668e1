"""nodalgen: exact counts of nodal curves on algebraic surfaces.

The package computes the counts t_delta(L) of delta-nodal curves in a
general delta-dimensional linear subsystem from the quasimodular
generating-function ansatz, determines the two unknown universal series
B1, B2 by fitting against plane Severi degrees (computed via the
Caporaso-Harris recursion on tangency profiles), and reproduces the genus
count series for K3, abelian and Enriques surfaces along with the plane
node polynomials.  All arithmetic is exact.
"""

from .errors import NodalgenError
from .modforms import d2g2, delta, dg2, eisenstein, form_series, sigma
from .multipoly import POLY4, Poly1, Poly4, T, X, Y, Z, interpolate, lift
from .qseries import (
    QSeries,
    RATIONAL,
    expand_in_base,
    expand_in_base_residue,
)
from .severi import (
    MemoCache,
    cache_load,
    cache_save,
    severi_degree,
    severi_rel,
    severi_table,
)
from .surfaces import (
    GenusCountSeries,
    NodePolynomial,
    abelian_egf_check,
    abelian_genus2_count,
    abelian_genus_series,
    enriques_genus_series,
    genus_series,
    geometry_preset,
    k3_genus_series,
    node_polynomial,
    node_polynomials,
    qmu_extract,
    ruled_predictions,
)
from .universal import (
    BSeriesPair,
    FitResult,
    SurfaceGeometry,
    conjecture_rhs,
    conjecture_rhs_symbolic,
    fit3_verify_C1,
    fit_BC,
    nr_series,
    tdelta_evaluate,
    tdelta_universal,
    trivial_b,
    universal_log_parts,
)
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "BSeriesPair", "FitResult", "GenusCountSeries", "MemoCache",
    "NodalgenError", "NodePolynomial", "POLY4", "Poly1", "Poly4", "QSeries",
    "RATIONAL", "SurfaceGeometry", "T", "X", "Y", "Z",
    "abelian_egf_check", "abelian_genus2_count", "abelian_genus_series",
    "cache_load", "cache_save", "conjecture_rhs", "conjecture_rhs_symbolic",
    "d2g2", "delta", "dg2", "eisenstein", "enriques_genus_series",
    "expand_in_base", "expand_in_base_residue", "fit3_verify_C1", "fit_BC",
    "form_series", "genus_series", "geometry_preset", "interpolate",
    "k3_genus_series", "lift", "node_polynomial", "node_polynomials",
    "nr_series", "qmu_extract", "ruled_predictions", "run_verify",
    "severi_degree", "severi_rel", "severi_table", "sigma",
    "tdelta_evaluate", "tdelta_universal", "trivial_b", "universal_log_parts",
]
