"""A staircase-with-ramps generator: its range, the gaps, and the projection G_M.

Run: python demos/01_range_and_projection.py
"""

from genassoc import ExtRat, load_fixture

spec = load_fixture("plateaus_sum")
g, d = spec.generator, spec.scenario.d

print("generator:", g)
print("range M   =", d.m)

# The range is rebuilt from two pieces of data: the gaps [b_k, d_k] between
# its pieces and the isolated points C that sit on gap boundaries.
print("gaps      =", ", ".join(f"[{b},{e}]" for b, e in d.gaps))
print("C         =", ", ".join(str(c) for c in sorted(d.c_points)))
print("rebuilt   =", d.reconstruct(), "(equal)" if d.reconstruct() == d.m else "(different!)")

# G_M sends every point of [0, inf] into M. Inside a gap it picks the upper
# end when that end belongs to M, so 2 (not in M) goes up to 3.
print()
for x in ["1", "2", "5/2", "4", "11/2", "13/2", "9", "inf"]:
    v = ExtRat(x)
    print(f"G_M({x:>4}) = {str(d.g_m(v)):>3}    f(f^-1({x})) = {g.eval(g.pseudo_inverse(v))}")
