"""Cohomology profiles of Spec Z minus S and of rings of quadratic integers.

Run with:  python demos/01_cohomology_profiles.py
"""

from etalecup import build_field, cohomology_punctured, cohomology_unpunctured, enumerate_torsors

# Removing primes from Spec Z makes H^1 and H^2 grow.  With S = {5, 29}
# both are (Z/2)^2: one class for each of Q(sqrt 5), Q(sqrt 29) in H^1,
# and one class per local -1 in H^2.
for S in [(5,), (5, 29), (2,), (3,)]:
    print(cohomology_punctured(S, 2))

# H^1 at n = 2 is counted by quadratic fields ramified only in S.
print()
for S in [(5,), (2,), (3, 7)]:
    names = ", ".join(str(t) for t in enumerate_torsors(S))
    print(f"S = {S}: nontrivial torsors {names}")

# Odd n has no real-place tail; a cubic field unramified outside 3 exists.
print()
print(cohomology_punctured((3,), 3))

# Spec Z itself: H^1 = H^2 = 0 and the tail Z/2 comes from the real place.
print()
print(cohomology_unpunctured(None, 2))
for m in (-5, -23, 3, 79):
    K = build_field(m)
    for n in (2, 3):
        print(cohomology_unpunctured(K, n))
