"""
The field and the space W
=========================

Arithmetic in GF(q) and the lines and planes of W = GF(q)^n that the
construction is built from.
"""

# %%
# A field of order q = 1 mod 6. Elements are plain ints; for prime q they are
# the residues, for q = p^k the base-p coefficient index.
from lkts.galois import field_create

F = field_create(13)
print("g =", F.g, " omega =", F.omega, " t =", F.t)
print("omega^3 =", F.pow(F.omega, 3), " log(3) =", F.discrete_log(3))

F25 = field_create(5, 2)
print("GF(25) modulus coefficients (constant first):", F25.modulus, " g =", F25.g)

# %%
# Points of W are ints too. Labels join the coordinates with ':'.
from lkts.geometry import Space

S = Space(F, 2)
x = S.point((2, 6))
print(S.label(x), "+", S.label(S.point((12, 12))), "=", S.label(S.add(x, S.point((12, 12)))))

# %%
# Every direction has a generator whose last nonzero coordinate is 1.
gen, scale = S.normalize_direction(x)
print(f"{S.label(x)} = {scale} * {S.label(gen)}")
print("lines:", [S.label(S.lines.u(i)) for i in range(1, len(S.lines) + 1)])

# %%
# Through a line of W = GF(7)^3 pass q + 1 = 8 planes; outside the line they
# partition the remaining points.
S3 = Space(field_create(7), 3)
planes = S3.planes_through(1)
outside = set()
for L in planes:
    outside |= set(L.points.tolist()) - set(S3.line_points(1).tolist())
print(len(planes), "planes cover", len(outside), "points off the line, of", S3.size - 7)

# %%
# On a plane with basis (b1, b2), the form f(x, y) = x1 y2 - x2 y1 is
# evaluated in plane coordinates. For n = 2 it is the determinant.
L = S.planes_through(1)[0]
print("f((2,3),(4,5)) =", S.plane_form(L, S.point((2, 3)), S.point((4, 5))))
