"""Quadratic reciprocity read off from cup products.

For p, q = 1 mod 4 and S = {p, q}, the product x_p cup x_q in H^2 vanishes
exactly when (p/q) = 1.  Computing it from either side gives (p/q) = (q/p).
"""

from etalecup import IdeleRep, Place, cup_h1_h1, solve_descent, torsion_triple, torsor_for, verify_reciprocity
from etalecup.cup import cup_exponent

S = (5, 13)
x5, x13 = torsor_for(5, S), torsor_for(13, S)

# The torsion class -1 at 13.  Its descent data in Q(sqrt 5): t = 1 and a
# local beta above 13 with beta / sigma(beta) = -1.  Since 5 is inert at 13
# the norm of beta is not a square there.
alpha = torsion_triple(IdeleRep.from_dict(2, {Place(13): -1}), S)
data = solve_descent(x5, alpha)
print("t =", data.t, " I =", data.I)
for v, b in data.beta.items():
    print(f"  beta at {v}: {b}   N(beta) = {data.norm_beta(v)}")
print("exponent e at n = d = 2:", cup_exponent(2, 2))
print("idele sent to x_13:", data.output_idele())
print("x_5 cup x_13 =", cup_h1_h1(x5, x13, S), " x_13 cup x_5 =", cup_h1_h1(x13, x5, S))

S = (5, 29)
print("x_5 cup x_29 =", cup_h1_h1(torsor_for(5, S), torsor_for(29, S), S))

print()
rep = verify_reciprocity(60)
for r in rep.records:
    mark = "ok" if r.passed else "MISMATCH"
    print(f"({r.p:2d}, {r.q:2d})  cup vanishes {r.cup_pq_vanishes!s:5}  (p/q) = {r.jacobi_pq:+d}  {mark}")
