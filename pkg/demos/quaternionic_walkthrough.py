"""Walk through one diagram end to end: A5 with the reversal involution.

The real form is sl(3,H). Its one component lies in the balanced list, so an
exact metric exists; we print it and check it, then tamper with one value and
watch the check fail. Run with ``python3 demos/quaternionic_walkthrough.py``.
"""
from fractions import Fraction

from hermvogan import decide_balanced, elaborate, make_structure, parse_diagram
from hermvogan.classify import verify_balanced_witness, witness_from_lambda
from hermvogan.vogan import imaginary_positive

el = elaborate(parse_diagram("A5 inv=(1 5)(2 4)"))
st = make_structure(el.vd, el.delta0)

verdict = decide_balanced(st, "Oracle")
print("balanced:", verdict.balanced, "| certificate:", type(verdict.certificate).__name__)

# the imaginary roots here are exactly the theta-fixed ones
imag = [a for a, _ in imaginary_positive(el.vd)]
print("imaginary positive roots:", imag)
total = [sum(a[i] for a in imag) for i in range(5)]
print("their sum:", total)

# hand-made metric: weight 1/(k-1) on the middle simple root, 1 elsewhere
lam = {a: Fraction(1) for a in imag}
lam[(0, 0, 1, 0, 0)] = Fraction(1, 2)
mp = witness_from_lambda(st, lam)
print("hand-made metric verifies:", verify_balanced_witness(st, mp))

bad = dict(mp.lam)
bad[(0, 0, 1, 0, 0)] = Fraction(1)
print("after tampering:", verify_balanced_witness(st, type(mp)(bad, mp.mu, mp.D)))
