"""
A total power operation from a formal group law
===============================================

Every step of the pipeline, printed: the two-series of the deformed law,
the isogeny source, the compositional inverse, the integrand, and the
division that produces the projective-space coefficient.
"""

from dlforge.formal_groups import appendix_pipeline, preset

p = preset("appendix-z-v3")
print("coefficient ring:", p.ring)
print("logarithm powers:", {n: str(c) for n, c in sorted(p.log_powers.items())})

result = appendix_pipeline(2, p)

print("\n<2>      =", result.bracket2)
print("g(x)     =", result.g)
print("k(y)     =", result.k)
print("k^{-1}   =", result.kinv)
print("f_2      =", result.f_n)
print("h_2      =", result.h_n)
print("raw      =", result.raw)
print("reduced  =", result.reduced)

print("\ninternal checks:")
for label, ok in result.checks:
    print("  %-48s %s" % (label, "ok" if ok else "FAILS"))

# The additive law is the sanity oracle: its pipeline is exactly the
# classical binomial computation and the interesting value vanishes.
oracle = appendix_pipeline(1, preset("additive"))
print("\nadditive oracle: f_1 =", oracle.f_n, " h_1 =", oracle.h_n, " raw =", oracle.raw)
