"""
Maximal minors and diagonal subalgebras
=======================================
"""

from bihilbert.catalog import get_record
from bihilbert.closed_forms import embedded_degree, minors_mixed_mult
from bihilbert.diagonal import DiagonalSpec, diagonal_fit
from bihilbert.polyfit import extract_report, fit_bivariate, fit_presentation

# 2x2 minors of a generic 2x3 matrix; values come from the decomposition formula
rec = get_record("minors_2x3")
p, _ = fit_bivariate(rec.source(), 2, 5)
print("fit        ", extract_report(p).e)
print("degree 2   ", minors_mixed_mult(3).e)
# assigning the minors degree 3 instead changes every coefficient
print("degree 3   ", minors_mixed_mult(3, degree=3).e)

# diagonals k[(I^e)_c] of the Rees algebra of (x^2, y^3)
pair = get_record("regular_pair_x2_y3").presentation
report = extract_report(fit_presentation(pair)[0])
for c, e in [(4, 1), (7, 2)]:
    fit = diagonal_fit(pair, DiagonalSpec(c, e))
    print((c, e), "degree", fit.degree, "multiplicity", fit.multiplicity,
          "predicted", embedded_degree(report, c, e))
