"""
Operation value tables in the two homology models
=================================================

The generating-function formulas give every Q^s value on the polynomial
generators; the small tables printed here are the ones the downstream
arguments quote.
"""

from dlforge.homology import dual_steenrod, mu_homology, map_p

# -- the complex-bordism side -------------------------------------------

M = mu_homology()
print("action on the b-classes (Priddy's formula):")
for s, k in ((2, 1), (4, 1), (6, 1), (8, 1), (10, 1), (6, 2), (10, 2)):
    print("  Q%-2d b%d = %s" % (s, k, M.q(s, M.b(k))))

# odd operations vanish and the top one squares, with no case analysis
# in the code: both fall out of extracting one homogeneous component.
print("\n  Q3 b1 =", M.q(3, M.b(1)))
print("  Q2 b1 =", M.q(2, M.b(1)))

# -- the dual Steenrod side ----------------------------------------------

A = dual_steenrod()
print("\naction on the conjugate generators (Steinberger's formula):")
for s, i in ((2, 1), (3, 1), (4, 1), (5, 1)):
    print("  Q%-2d xibar%d = %s" % (s, i, A.q_conjugate(s, i)))

# the degree-31 computation: one step of the ladder Q^{2^i} xibar_i = xibar_{i+1}
print("  Q16 xibar4 = xibar5:", A.q_conjugate(16, 4) == A.antipode_xi(5))

# -- the squaring map ties them together -----------------------------------

print("\np(b1) =", map_p(M.b(1)))
print("p(Q4 b1) =", map_p(M.q(4, M.b(1))))
print("Q4 p(b1) =", A.q(4, A.xi(1) * A.xi(1)))
