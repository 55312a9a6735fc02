"""High degrees are governed by the real place.

Restriction to R identifies H^i for i >= 3 with H^i(Gal(C/R), Z/2), the
degree-i part of F_2[w].  Cup products there are products of restrictions.
"""

from etalecup import HighClass, cup_class, cup_high, restrict_to_real, torsor_for

S = (2,)
w = torsor_for(-4, S)  # Q(i) is nontrivial over R
print("restriction of Q(i):", restrict_to_real(w))
w2 = cup_class(w, w, S)
print("w cup w on C_S[2] generators:", w2.values, " restricted:", restrict_to_real(w2))
print("w^3 =", cup_high(w2, w))

x5 = torsor_for(5, (5,))  # real torsor: every high product with it vanishes
print("restriction of Q(sqrt 5):", restrict_to_real(x5))
print("x5 cup H^3 generator =", cup_high(HighClass(3, (1,)), x5))
