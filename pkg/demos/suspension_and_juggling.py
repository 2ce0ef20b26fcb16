"""
Substitution maps, composites, and suspension
=============================================

Two routes from a degree-30 class must agree, and suspending the result
turns product terms off while keeping the operations.
"""

from dlforge.expressions import format_expression
from dlforge.homology import dual_steenrod, indeterminacy_scan
from dlforge.relations import (
    alpha,
    beta,
    juggling_residual,
    mu,
    nu,
    qbar,
    relation_map,
    suspended_relation,
)
from dlforge.substitutions import compose_maps, suspend

# Three composites out of the degree-30 class:
for f, g in ((mu(), relation_map()), (qbar(), nu()), (beta(), alpha())):
    composite = compose_maps(f, g)
    print("%-4s z30 -> %s" % (composite.name, format_expression(composite.image("z30"))))

# Their mod-2 sum normalizes to zero: the two routes agree.
print("\nsum of the three images, normalized:", juggling_residual())

# Suspension keeps one-module terms and renames by the degree shift.
sus = suspended_relation()
print("\nsuspended relation on z'31:")
print("  ", format_expression(sus.image("z'31")))

small = suspend(qbar())
print("suspended comparison map on z'15:")
print("  ", format_expression(small.image("z'15")))

# Feeding every basis class of the dual algebra through each slot of the
# suspended relation lands in decomposables, so the indeterminacy dies
# in the degree-31 indecomposable quotient.
A = dual_steenrod()
scan = indeterminacy_scan(sus, A, {"x": A.xi(1) * A.xi(1)})
print("\nindeterminacy scan (values in degree 31):")
for row in scan["terms"]:
    print(
        "  %-22s slot degree %2d, %2d classes, decomposable: %s"
        % (row["term"], row["source_degree"], row["basis_size"], row["decomposable"])
    )
print("all decomposable:", scan["all_decomposable"])
