"""Three routes to an associativity verdict, compared on a few scenarios.

The span-image test is a cheap sufficient condition. The F-condition test is
a characterisation, but only under its own hypothesis. The oracle evaluates
T(T(x,y),z) = T(x,T(y,z)) exactly on a finite cube and serves as the
reference.

Run: python demos/02_three_ways_to_decide.py
"""

from genassoc import check_fcondition, check_sufficient, load_fixture, oracle_t

SCENARIOS = [
    ("identity_sum", "f(x) = x with F = +"),
    ("half_plateau_scaled_product", "plateau at 1/2 with F(x,y) = xy/2"),
    ("pole_shifted_sum", "pole at 1 with F(x,y) = x+y+1"),
    ("quarter_step_product", "step generator with F = product"),
]


def show(v):
    text = v.outcome.value
    if v.witness is not None:
        text += f" (witness {v.to_json()['witness']})"
    if v.failed_hypothesis:
        text += f" [{v.failed_hypothesis}]"
    return text


for name, blurb in SCENARIOS:
    spec = load_fixture(name)
    s = spec.scenario
    print(f"== {name}: {blurb}")
    print(f"   M = {s.m}")
    print("   span images :", show(check_sufficient(s)))
    print("   F-condition :", show(check_fcondition(s, spec.witness)))
    print("   oracle      :", show(oracle_t(s, spec.witness)))
    print()
