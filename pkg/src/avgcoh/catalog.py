"""Bundled example algebras used across the test suites and the CLI docs.

Small, hand-checkable instances: fields k^n with diagonal and non-diagonal
operators, dual numbers k[x]/(x^2), 2x2 upper-triangular matrices, the
one-dimensional zero algebra, and the empty algebra.  One 3-dimensional
operator is found by seeded rejection sampling rather than written down,
matching how such operators are found in practice.
"""

import random

from .algebra import (AveragingAlgebra, AvBimodule, regular_bimodule,
                      sample_averaging_operators, verify_averaging_algebra)
from .linalg import QQ, DenseMatrix


def build_algebra(field, dim, products, avg_rows, unit=None, name=""):
    """products: list of (i, j, k, value) triples, 0-based, sparse."""
    mul = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k, v in products:
        mul[i][j][k] = v if not isinstance(v, int) else field.from_int(v)
    avg = DenseMatrix.from_rows(field, [[field.from_int(x) if isinstance(x, int) else x
                                         for x in row] for row in avg_rows]) \
        if dim else DenseMatrix(field, 0, 0)
    if unit is not None:
        unit = [field.from_int(x) if isinstance(x, int) else x for x in unit]
    return AveragingAlgebra(field, dim, mul, avg, unit=unit, name=name)


def _kn(n):
    return [(i, i, i, 1) for i in range(n)]


_DUAL = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]

# upper-triangular 2x2 matrices, basis (E11, E12, E22)
_TRI = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)]


class CatalogEntry:
    def __init__(self, name, algebra, blurb):
        self.name = name
        self.algebra = algebra
        self.blurb = blurb

    def __repr__(self):
        return "CatalogEntry(%r)" % self.name


def _sampled_triangular():
    base = build_algebra(QQ, 3, _TRI, [[0] * 3] * 3, unit=(1, 0, 1), name="tri2-sampled")
    rng = random.Random(20240811)
    for cand in sample_averaging_operators(base, rng, 40, max_tries=30000):
        diag = all(cand.avg.get(i, j) == 0 for i in range(3) for j in range(3) if i != j)
        if not diag and not cand.avg.is_zero():
            return cand
    raise RuntimeError("seeded operator search failed")  # pragma: no cover


_CATALOG = None


def catalog():
    global _CATALOG
    if _CATALOG is not None:
        return _CATALOG
    entries = [
        CatalogEntry("k-id",
                     build_algebra(QQ, 1, _kn(1), [[1]], unit=(1,), name="k-id"),
                     "the field k, identity operator"),
        CatalogEntry("k-zero-op",
                     build_algebra(QQ, 1, _kn(1), [[0]], unit=(1,), name="k-zero-op"),
                     "the field k, zero operator"),
        CatalogEntry("k-scale2",
                     build_algebra(QQ, 1, _kn(1), [[2]], unit=(1,), name="k-scale2"),
                     "the field k, scalar operator 2*id"),
        CatalogEntry("k2-proj",
                     build_algebra(QQ, 2, _kn(2), [[1, 0], [0, 0]], unit=(1, 1),
                                   name="k2-proj"),
                     "k^2 with projection onto the first idempotent"),
        CatalogEntry("k2-id",
                     build_algebra(QQ, 2, _kn(2), [[1, 0], [0, 1]], unit=(1, 1),
                                   name="k2-id"),
                     "k^2 with identity operator"),
        CatalogEntry("k2-zero-op",
                     build_algebra(QQ, 2, _kn(2), [[0, 0], [0, 0]], unit=(1, 1),
                                   name="k2-zero-op"),
                     "k^2 with zero operator"),
        CatalogEntry("k2-skew",
                     build_algebra(QQ, 2, _kn(2), [[0, 1], [0, 1]], unit=(1, 1),
                                   name="k2-skew"),
                     "k^2 with the non-diagonal operator e2 |-> e1 + e2"),
        CatalogEntry("dual-num-proj",
                     build_algebra(QQ, 2, _DUAL, [[1, 0], [0, 0]], unit=(1, 0),
                                   name="dual-num-proj"),
                     "dual numbers k[x]/(x^2), operator diag(1, 0)"),
        CatalogEntry("dual-num-nil",
                     build_algebra(QQ, 2, _DUAL, [[0, 0], [1, 0]], unit=(1, 0),
                                   name="dual-num-nil"),
                     "dual numbers, nilpotent operator 1 |-> x |-> 0"),
        CatalogEntry("tri2-e11",
                     build_algebra(QQ, 3, _TRI, [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
                                   unit=(1, 0, 1), name="tri2-e11"),
                     "upper-triangular 2x2 matrices, corner projection"),
        CatalogEntry("tri2-diag",
                     build_algebra(QQ, 3, _TRI, [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
                                   unit=(1, 0, 1), name="tri2-diag"),
                     "upper-triangular 2x2 matrices, diagonal-part projection"),
        CatalogEntry("tri2-sampled",
                     _sampled_triangular(),
                     "upper-triangular 2x2 matrices, operator found by seeded search"),
        CatalogEntry("zero1",
                     build_algebra(QQ, 1, [], [[0]], name="zero1"),
                     "one-dimensional algebra with zero product"),
        CatalogEntry("empty",
                     build_algebra(QQ, 0, [], [], name="empty"),
                     "the zero-dimensional algebra"),
    ]
    _CATALOG = entries
    return entries


def by_name(name):
    for e in catalog():
        if e.name == name:
            return e.algebra
    raise KeyError(name)


def small_bimodule_examples():
    """Named (algebra, bimodule) pairs beyond the regular ones."""
    from .algebra import zero_bimodule
    k2 = by_name("k2-proj")
    # M = k, e1 acting as 1 and e2 as 0 on both sides, A_M = 1
    one = DenseMatrix.from_rows(QQ, [[QQ.one]])
    zero = DenseMatrix.zeros(QQ, 1, 1)
    proj_line = AvBimodule(k2, 1, [one, zero], [one, zero], one, name="k-line")
    return [
        ("k2-proj/k-line", proj_line),
        ("k2-proj/zero", zero_bimodule(k2)),
        ("tri2-e11/reg", regular_bimodule(by_name("tri2-e11"))),
    ]


def corrupted_variants():
    """Broken copies of catalog members; each must fail verification."""
    bad = []
    alg = by_name("k2-proj")
    mul = [[list(c) for c in row] for row in alg.mul]
    mul[1][0][1] = QQ.one  # e2 * e1 = e2 breaks associativity
    bad.append(("k2-proj/assoc",
                AveragingAlgebra(QQ, 2, mul, alg.avg, unit=alg.unit, name="k2-bad-mul")))
    bad.append(("k2-proj/operator",
                alg.with_operator(DenseMatrix.from_rows(
                    QQ, [[QQ.one, QQ.one], [QQ.zero, QQ.zero]]), name="k2-bad-op")))
    dn = by_name("dual-num-proj")
    bad.append(("dual-num/unit",
                AveragingAlgebra(QQ, 2, dn.mul, dn.avg, unit=[QQ.zero, QQ.one],
                                 name="dual-bad-unit")))
    tri = by_name("tri2-diag")
    ents = list(tri.avg.entries)
    ents[1] = QQ.one  # A(E12) = E11 wrecks the averaging law
    bad.append(("tri2-diag/operator",
                tri.with_operator(DenseMatrix(QQ, 3, 3, ents), name="tri2-bad-op")))
    return bad


def corrupted_bimodules():
    alg = by_name("k2-proj")
    reg = regular_bimodule(alg)
    wrong_op = AvBimodule(alg, reg.dim, reg.left, reg.right,
                          DenseMatrix.identity(QQ, 2), name="reg-bad-op")
    tri = by_name("tri2-e11")
    treg = regular_bimodule(tri)
    swapped = AvBimodule(tri, treg.dim, treg.right, treg.left, treg.avg_m,
                         name="reg-swapped")
    return [("k2-proj/reg-bad-op", wrong_op), ("tri2-e11/reg-swapped", swapped)]


_SAMPLE_BASES = None


def _sample_bases():
    global _SAMPLE_BASES
    if _SAMPLE_BASES is None:
        _SAMPLE_BASES = [
            build_algebra(QQ, 2, _kn(2), [[0, 0], [0, 0]], unit=(1, 1), name="k2"),
            build_algebra(QQ, 2, _DUAL, [[0, 0], [0, 0]], unit=(1, 0), name="dual"),
            build_algebra(QQ, 3, _kn(3), [[0] * 3] * 3, unit=(1, 1, 1), name="k3"),
            build_algebra(QQ, 3, _TRI, [[0] * 3] * 3, unit=(1, 0, 1), name="tri2"),
        ]
    return _SAMPLE_BASES


_SAMPLE_CACHE = {}


def sampled_instances(count, seed=20240810):
    """Valid averaging algebras of dim <= 3 found by rejection sampling."""
    key = (count, seed)
    if key in _SAMPLE_CACHE:
        return _SAMPLE_CACHE[key]
    rng = random.Random(seed)
    out = []
    bases = _sample_bases()
    per = (count + len(bases) - 1) // len(bases)
    for base in bases:
        got = sample_averaging_operators(base, rng, per)
        for i, alg in enumerate(got):
            alg.name = "%s-sample%d" % (base.name, i)
        out.extend(got)
    assert len(out) >= count, "rejection sampling came up short"
    _SAMPLE_CACHE[key] = out[:count]
    return _SAMPLE_CACHE[key]
