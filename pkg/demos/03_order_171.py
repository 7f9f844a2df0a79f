"""
A Kirkman triple system of order 171
====================================

Building B_w for q = 13, n = 2 from Denniston's LKTS(15), and finding which
design and class hold a given triple.
"""

# %%
from lkts.construction import ClassId, Construction

ctx = Construction.from_spec(13, 2, "builtin:denniston15")
S = ctx.space
P = S.point


def show(triples, k=6):
    return ["{" + ",".join(S.label(int(x)) for x in t) + "}" for t in triples[:k]]


# %%
# The triple map T(u, v) = {u+v, w u + w^2 v, w^2 u + w v}.
print(show([ctx.triple_T(P((1, 0)), P((0, 1)))]))

# %%
# Partial class for u_1 = (1,0), c = 1: 52 triples covering W minus the line.
frame = ctx.partial_class(1, 0, 0)
print(len(frame), "triples, e.g.", show(frame))

# %%
# The full class adds the hole blocks, taken from the base design.
cls = ctx.build_class(0, 1, 0, 0)
print(cls.id, len(cls.triples), "triples")
star = ctx.build_star_class(0)
print("star:", show(star.triples))

# %%
# B_0 has 85 classes of 57 triples.
d = ctx.design0
print(len(d.classes), "classes,", len(d.blocks()), "blocks")

# %%
# locate_triple inverts membership.
for tri in [(P((1, 1)), P((3, 9)), P((9, 3))), (S.inf1, S.inf2, P((5, 7))), (P((2, 5)), P((7, 1)), S.inf2)]:
    w, cid = ctx.locate_triple(tri)
    found = tuple(sorted(tri)) in ctx.build_design(w).by_id()[cid].as_set()
    print(show([sorted(tri)]), "-> w =", S.label(w), "class", cid, "member:", found)

# %%
# Class ids are (line, a, b); the matching base class is a + b t + 1.
print([str(c) for c in ctx.class_ids[:8]], ClassId(1, 1, 2).base_index(ctx.t))
