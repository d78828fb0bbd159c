"""T can fail associativity even when the induced operation on M looks fine.

With a plateau, the pseudo-inverse f^(-1)(v) = sup{x : f(x) < v} can land on
a point that is not the least point of its level set. That breaks the link
between T on [0,1] and the operation x (x) y = G_M(F(x,y)) on the range M.

Run: python demos/03_when_t_and_otimes_disagree.py
"""

from genassoc import load_fixture, oracle_otimes, oracle_t

spec = load_fixture("quarter_plateau_sum")
s = spec.scenario
print("generator:", s.g)
print("M =", s.m)

t = oracle_t(s, spec.witness)
o = oracle_otimes(s, spec.witness)
x, y, z = t.witness
print(f"\noracle on T : {t.outcome.value}, least witness ({x}, {y}, {z})")
print(f"  T(T(x,y),z) = T({s.t_eval(x, y)},{z}) = {t.details['lhs']}")
print(f"  T(x,T(y,z)) = T({x},{s.t_eval(y, z)}) = {t.details['rhs']}")
print(f"oracle on (x): {o.outcome.value} on {o.details['cube_size']} triples")

inner = s.t_eval(y, z)
print(f"\nT({y},{z}) = {inner}; is it the least point with f = {s.g.eval(inner)}?",
      "yes" if s.g.in_b(inner) else f"no, that is {s.g.b_witness(inner)}")
