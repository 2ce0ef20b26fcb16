"""
From a formal-group computation to a suspension class
=====================================================

The composed chain: run the power-operation pipeline, identify its
coefficient ring inside the Hopf-ring quotient, apply the operation to a
Hurewicz class, and suspend.  The k = 4 run shows the decomposable
coefficient dying in the quotient.
"""

from dlforge.hopf_ring import verify_gotcha_chain

chain = verify_gotcha_chain(k=5)
print("chain for k = 5:")
for step in chain["steps"]:
    tag = " [imported]" if step["imported"] else ""
    print("  %-16s %s%s" % (step["id"], step["value"], tag))
    print("      %s" % step["statement"])
print("endpoint:", chain["endpoint"])

print()
low = verify_gotcha_chain(k=4)
print("chain for k = 4 ends at:", low["endpoint"], "(the coefficient is decomposable)")

# Without the identification the raw series is surfaced instead of used.
raw = verify_gotcha_chain(identify=False)
print("\nwithout identification, the pipeline output is only reported:")
print("  ", raw["steps"][-1]["value"])
print("endpoint:", raw["endpoint"])
