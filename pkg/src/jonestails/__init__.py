"""Exact q-series for the tails of coloured Jones polynomials of alternating knots.

The package evaluates the 0- and 1-limits of the normalised coloured Jones
sequence as Nahm-type sums read off a planar diagram, computes coloured
Jones polynomials by a braid state sum, and checks the two against each
other and against closed-form theta-series expressions.
"""

from __future__ import annotations

from .diagram import LinkDiagram, NahmData, faces, nahm_data, nahm_data_from_pd, parse_pd
from .errors import JonesTailsError
from .jones import BraidWord, hat_jones, jones_braid, kauffman_jones
from .knots import builtin_table, knot_diagram, knot_record
from .nahm import enumerate_adm, nahm_sum, phi0, phi1
from .qseries import QSeries
from .stability import empirical_phi, jones_sequence, verify_0stability, verify_kstability

__all__ = [
    "BraidWord", "JonesTailsError", "LinkDiagram", "NahmData", "QSeries",
    "builtin_table", "empirical_phi", "enumerate_adm", "faces", "hat_jones",
    "jones_braid", "jones_sequence", "kauffman_jones", "knot_diagram", "knot_record",
    "nahm_data", "nahm_data_from_pd", "nahm_sum", "parse_pd", "phi0", "phi1",
    "verify_0stability", "verify_kstability",
]
