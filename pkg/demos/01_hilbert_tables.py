"""
Bigraded Hilbert functions from scratch
=======================================

Count dimensions of bigraded pieces directly, then fit a polynomial.
"""

from bihilbert import QuotientPresentation, ReesPresentation, hilbert_table
from bihilbert.polyfit import extract_report, fit_presentation
from bihilbert.polynomials import SparsePolynomial

# k[X, Y, Z] with X in degree (1,0) and Y, Z in degree (0,1)
grid = QuotientPresentation(1, (0, 1))
table = hilbert_table(grid, range(6), range(6))
for v in range(6):
    print(" ".join(f"{table[(u, v)]:3d}" for u in range(6)))

# the Rees algebra of (x^2, y^3) in k[x, y, z]
x, y, z = [SparsePolynomial.variable(i, 3) for i in range(3)]
rees = ReesPresentation(3, (x ** 2, y ** 3), (2, 3))

# the fitted polynomial agrees with the counts once u is large compared to v
p, region = fit_presentation(rees)
print("stable from", (region.u0, region.v0))
print("p(10, 2) =", p(10, 2))

# top form of the polynomial in u and v
report = extract_report(p)
print("total degree", report.s, "mixed multiplicities", report.e)
