"""Bracket values from Hurwitz numbers.

Computes the intersection brackets for genus 0, 1, 2 from one-part Hurwitz
numbers, shows the string and dilaton recursions in action, and checks the
double extraction against the change-of-variables transform.
"""

from taulab.hurwitz import (HurwitzQuery, ONEPART, hurwitz_bruteforce,
                            hurwitz_frobenius, h_onepart_series,
                            h_unst_onepart)
from taulab.pic import bracket, genus_table, f_series, chvar_pic, string_check


def main():
    print("A few one-part Hurwitz numbers (brute force = character sum):")
    for g, profile in [(0, (1, 1, 1)), (1, (2,)), (1, (3,)), (2, (2,))]:
        q = HurwitzQuery(ONEPART, g, profile)
        b = hurwitz_bruteforce(q)
        f = hurwitz_frobenius(q)
        assert b == f
        print("  h(g=%d, b=%s) = %s" % (g, profile, b))

    print("\nGenerator brackets by genus (all indices >= 2):")
    for g in (0, 1, 2):
        for ds, v in sorted(genus_table(g).items()):
            print("  g=%d  <%s> = %s" % (g, " ".join("tau_%d" % d for d in ds), v))

    print("\nString and dilaton recursions on extracted values:")
    print("  <tau_0 tau_3> = %s = <tau_2> = %s" % (bracket((0, 3)), bracket((2,))))
    print("  <tau_1 tau_2> = %s  (dilaton factor 1 on <tau_2>)" % bracket((1, 2)))

    W, M = 9, 5
    H_st = h_onepart_series(W, M) - h_unst_onepart(W, M)
    img = chvar_pic(H_st, q_floor=1)
    F = img.q_slice(1)
    assert F == f_series(F.cap_weight)
    assert string_check(F)
    print("\nTransform route agrees with the alternating-sum route through "
          "weight %d, and the string equation holds." % F.cap_weight)


if __name__ == "__main__":
    main()
