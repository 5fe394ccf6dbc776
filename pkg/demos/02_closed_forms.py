"""
Closed forms against brute force
================================
"""

from bihilbert import QuotientPresentation, ReesPresentation
from bihilbert.closed_forms import ggh_hilbert, prop13_leading, regseq_mixed_mult
from bihilbert.oracle import rees_hilbert
from bihilbert.polyfit import extract_report, fit_presentation
from bihilbert.polynomials import SparsePolynomial

# polynomial ring with Y variables in degrees (d_j, 1)
ring = QuotientPresentation(3, (2, 3))
print("fit    ", extract_report(fit_presentation(ring)[0]).e)
print("formula", prop13_leading(3, (2, 3)).sequence())

# two forms of degrees 2 and 3 with no common zero
x, y, z = [SparsePolynomial.variable(i, 3) for i in range(3)]
pair = ReesPresentation(3, (x ** 2 + y * z, y ** 3 + z ** 3 + x * y * z), (2, 3))
print("fit    ", extract_report(fit_presentation(pair)[0]).e)
print("formula", regseq_mixed_mult(3, 1, (2, 3)).e)

# the exact Hilbert function above the line u = 3v
for v in range(3):
    row = [(ggh_hilbert(2, 3, up, v), rees_hilbert(pair, up + 3 * v, v)) for up in range(1, 6)]
    print(v, row)
