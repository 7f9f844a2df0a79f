"""Deliberate corruptions of valid artifacts, each paired with the verifier
check that must catch it.

Every function takes valid inputs and returns ``(artifact, check_name)``.
Design-level tamperings feed :func:`verify_kts`, large-set ones feed
:func:`verify_large_set` and the base one feeds :func:`validate_base`.
"""
from __future__ import annotations

from dataclasses import replace

import numpy as np

from lkts.base_designs import BaseLargeSet
from lkts.construction import Design, ParallelClass


def _with_class(design: Design, k: int, triples) -> Design:
    classes = list(design.classes)
    classes[k] = ParallelClass(classes[k].id, np.asarray(triples, dtype=np.int64))
    return Design(design.w, tuple(classes))


def deleted_block(design: Design):
    c = design.classes[1].triples
    return _with_class(design, 1, c[1:]), "sts.pair_coverage"


def duplicated_block(design: Design):
    c = design.classes[2].triples
    return _with_class(design, 2, np.concatenate([c, c[:1]])), "sts.pair_coverage"


def swapped_point(design: Design):
    # one point of a block replaced by a point of the next block in the same class
    c = design.classes[3].triples.copy()
    c[0, 0] = c[1, 0]
    return _with_class(design, 3, c), "resolution.classes_partition_points"


def reindexed_design(designs: list[Design]):
    # the second design is given the first design's label and triples
    out = list(designs)
    out[1] = replace(designs[0])
    return out, "distinct_labels"


def shifted_class(designs: list[Design], translate):
    """Translate one class of B_1 by a fixed nonzero vector.

    The class still partitions X, so only the pair and disjointness checks
    can notice; with a translation-invariant base it lands on a class of
    another design.
    """
    out = list(designs)
    k = 5
    src = designs[1]
    classes = list(src.classes)
    classes[k] = ParallelClass(classes[k].id, translate(classes[k].triples))
    out[1] = Design(src.w, tuple(classes))
    return out, "pairwise_disjoint"


def corrupted_base(base: BaseLargeSet):
    # swap two points between blocks of different classes of D_0
    d0 = [list(map(list, c)) for c in base.design(0)]
    a = d0[1][1]
    b = next(blk for blk in d0[2] if blk[0] not in a)
    a[0], b[0] = b[0], a[0]
    designs = list(base.designs())
    designs[0] = tuple(tuple(tuple(b) for b in c) for c in d0)
    return BaseLargeSet(base.field, tuple(designs)), "designs_are_sts"
