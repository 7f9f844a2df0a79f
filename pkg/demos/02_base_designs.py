"""
Base large sets
===============

The construction needs a large set of Kirkman triple systems of order q + 2.
Two are shipped: Denniston's LKTS(15) over GF(13) and an LKTS(9) over GF(7)
found by exhaustive search.
"""

# %%
from lkts.base_designs import builtin_denniston15, builtin_lkts9, dumps_base, validate_base

den = builtin_denniston15()
print("compact:", den.compact, " translation invariant:", den.translation_invariant)
print("Q[0][0] =", den.cls(0, 0))

# %%
# Design d is design 0 shifted by d on the finite points.
print("Q[3][0] =", den.cls(3, 0))

# %%
# validate_base certifies the large-set property and returns a certificate.
print(validate_base(den).render())

# %%
# The LKTS(9) fixture is listed in full form: it is not a shift of one design.
nine = builtin_lkts9()
print(dumps_base(nine, "full").splitlines()[:6])
print("translation invariant:", nine.translation_invariant)
print(validate_base(nine).render())

# %%
# The fixture can be regenerated from scratch with
#   python3 -m tests.oracles.lkts9_search
# which enumerates all 840 labelled STS(9) and searches for 7 disjoint ones.
