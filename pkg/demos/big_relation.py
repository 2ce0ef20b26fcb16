"""
The ten-term relation and the operadic level it needs
=====================================================

Normalizing a sum of Dyer-Lashof words on a degree-2 class down to the
admissible basis, then asking how much E_n-structure the computation used.
"""

from dlforge.expressions import en_level_witness, format_expression, min_en_level
from dlforge.relations import (
    RELATION_TERMS,
    Y_DEFINITIONS,
    big_relation_expression,
    big_relation_residual,
    verify_auxiliary_identities,
    y_context,
)

# The relation is displayed over seven auxiliary degree-10..14 classes.
print("displayed terms:")
for term in RELATION_TERMS:
    print("   ", term)

print("\nwhere")
for name, definition in sorted(Y_DEFINITIONS.items()):
    print("    %s = %s" % (name, definition))

# Substituting the definitions and rewriting with the Adem, Cartan and
# instability rules kills every summand.
residual = big_relation_residual()
print("\nnormal form of the sum:", residual)

# Each row of the proof table is itself a checkable identity.
for lhs, rhs, holds, _ in verify_auxiliary_identities():
    print("  %-28s = %-28s %s" % (lhs, rhs, "ok" if holds else "FAILS"))

# The largest operation applied along the way: Q^20 on a degree-10 class,
# which needs level 20 - 10 + 2 = 12.
expr = big_relation_expression()
print("\nexpression:", format_expression(expr))
print("minimal operadic level:", min_en_level(expr, y_context()))
print("forced by (superscript, argument degree):", en_level_witness(expr, y_context()))
