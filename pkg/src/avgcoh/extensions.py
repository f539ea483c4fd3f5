"""Abelian extensions of an averaging algebra by a bimodule.

An extension is kept concrete: an averaging algebra structure on R + M in
which M is an ideal squaring to zero and stable under the operator.  The
attached datum (psi, chi) measures how far a section is from splitting;
building an extension from a datum succeeds as an averaging algebra exactly
when the datum is a 2-cocycle of the totalized complex, and two data give
isomorphic extensions exactly when they differ by (delta gamma, -Phi gamma).
"""

from .algebra import AveragingAlgebra, AvBimodule, regular_bimodule
from .complexes import (AVO_DEG1, HOCHSCHILD, Cochain, CohomologySpace,
                        assemble_ava_complex, flat_index, hoch_dim,
                        hochschild_matrix, phi_matrix, tuples)
from .linalg import DenseMatrix, from_columns, solve
from .report import Report


class NotAbelian(Exception):
    """The marked subspace is not a square-zero ideal."""


class NotStable(Exception):
    """The operator does not preserve the marked subspace."""


class NotACocycle(Exception):
    pass


class ExtensionDatum:
    """psi[i][j] in M for each pair of R basis elements; chi[i] in M."""

    def __init__(self, psi, chi):
        self.psi = psi
        self.chi = chi

    @classmethod
    def zero(cls, alg, module):
        f = module.field
        psi = [[[f.zero] * module.dim for _ in range(alg.dim)]
               for _ in range(alg.dim)]
        chi = [[f.zero] * module.dim for _ in range(alg.dim)]
        return cls(psi, chi)

    @classmethod
    def random(cls, alg, module, rng, lo=-2, hi=2):
        f = module.field
        d = cls.zero(alg, module)
        for i in range(alg.dim):
            d.chi[i] = [f.from_int(rng.randint(lo, hi)) for _ in range(module.dim)]
            for j in range(alg.dim):
                d.psi[i][j] = [f.from_int(rng.randint(lo, hi))
                               for _ in range(module.dim)]
        return d

    def to_vector(self, alg, module):
        out = []
        for (i, j) in tuples(alg.dim, 2):
            out.extend(self.psi[i][j])
        for i in range(alg.dim):
            out.extend(self.chi[i])
        return out

    @classmethod
    def from_vector(cls, alg, module, vec):
        d = cls.zero(alg, module)
        dm = module.dim
        pos = 0
        for (i, j) in tuples(alg.dim, 2):
            d.psi[i][j] = list(vec[pos:pos + dm])
            pos += dm
        for i in range(alg.dim):
            d.chi[i] = list(vec[pos:pos + dm])
            pos += dm
        return d

    def sub(self, other, field):
        psi = [[[field.sub(a, b) for a, b in zip(u, v)]
                for u, v in zip(ru, rv)]
               for ru, rv in zip(self.psi, other.psi)]
        chi = [[field.sub(a, b) for a, b in zip(u, v)]
               for u, v in zip(self.chi, other.chi)]
        return ExtensionDatum(psi, chi)

    def __eq__(self, other):
        return (isinstance(other, ExtensionDatum)
                and self.psi == other.psi and self.chi == other.chi)


class ExtensionContext:
    """Caches the degree-1/2 total differentials for one (alg, module)."""

    def __init__(self, alg, module, cap=3):
        self.alg = alg
        self.module = module
        self.ava = assemble_ava_complex(alg, module, cap)

    def is_cocycle(self, datum):
        vec = datum.to_vector(self.alg, self.module)
        return all(self.module.field.is_zero(x)
                   for x in self.ava.diffs[2].apply(vec))

    def gamma_coboundary(self, gamma):
        """(delta gamma, -Phi^1 gamma) as an ExtensionDatum; gamma: R -> M."""
        f = self.module.field
        vec = []
        for j in range(self.alg.dim):
            vec.extend(gamma.col(j))
        img = self.ava.diffs[1].apply(vec + [f.zero] * self.module.dim)
        return ExtensionDatum.from_vector(self.alg, self.module, img)


def extension_from_cocycle(alg, module, datum):
    """The candidate algebra on R + M built from (psi, chi).

    (x,m)(y,n) = (xy, xn + my + psi(x,y)), operator (x,m) |-> (Ax, chi(x) + A_M m).
    No cocycle precondition: validity of the result is the tested property.
    """
    f = module.field
    dr, dm = alg.dim, module.dim
    dim = dr + dm
    mul = [[[f.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dr):
        for j in range(dr):
            prod = alg.basis_product(i, j)
            for k in range(dr):
                mul[i][j][k] = prod[k]
            for a in range(dm):
                mul[i][j][dr + a] = datum.psi[i][j][a]
    for i in range(dr):
        for a in range(dm):
            vl = module.act_left_basis(i, _basis(f, dm, a))
            vr = module.act_right_basis(i, _basis(f, dm, a))
            for k in range(dm):
                mul[i][dr + a][dr + k] = vl[k]
                mul[dr + a][i][dr + k] = vr[k]
    ents = [f.zero] * (dim * dim)
    for j in range(dr):
        for i in range(dr):
            ents[i * dim + j] = alg.avg.get(i, j)
        for a in range(dm):
            ents[(dr + a) * dim + j] = datum.chi[j][a]
    for b in range(dm):
        for a in range(dm):
            ents[(dr + a) * dim + (dr + b)] = module.avg_m.get(a, b)
    avg = DenseMatrix(f, dim, dim, ents)
    return AveragingAlgebra(f, dim, mul, avg,
                            name="ext(%s)" % (alg.name or "R"))


def _basis(f, dim, a):
    v = [f.zero] * dim
    v[a] = f.one
    return v


def canonical_section(alg, module):
    """s(e_i) = (e_i, 0) into R + M coordinates."""
    f = alg.field
    dim = alg.dim + module.dim
    ents = [f.zero] * (dim * alg.dim)
    for j in range(alg.dim):
        ents[j * alg.dim + j] = f.one
    return DenseMatrix(f, dim, alg.dim, ents)


def cocycle_from_section(ext, alg, section):
    """Extract (psi, chi) and the induced bimodule from a marked extension.

    The first alg.dim coordinates of ext project onto R; the rest span M.
    Checks: M is a square-zero ideal, the operator preserves M, the section
    satisfies p . s = id, and the quotient structure matches alg.
    """
    f = ext.field
    dr = alg.dim
    dm = ext.dim - dr
    assert dm >= 0

    def proj_r(v):
        return v[:dr]

    def proj_m(v):
        return v[dr:]

    def is_m(v):
        return all(f.is_zero(x) for x in proj_r(v))

    # M an ideal with M.M = 0
    for a in range(dm):
        ma = ext.basis_vector(dr + a)
        for b in range(dm):
            if any(not f.is_zero(x)
                   for x in ext.multiply(ma, ext.basis_vector(dr + b))):
                raise NotAbelian("M.M != 0 at (%d, %d)" % (a, b))
        for i in range(ext.dim):
            e = ext.basis_vector(i)
            if not is_m(ext.multiply(e, ma)) or not is_m(ext.multiply(ma, e)):
                raise NotAbelian("M is not an ideal")
        if not is_m(ext.apply_avg(ma)):
            raise NotStable("operator image of M leaves M")

    assert section.rows == ext.dim and section.cols == dr
    s_img = [section.col(j) for j in range(dr)]
    for j in range(dr):
        expect = [f.one if i == j else f.zero for i in range(dr)]
        assert proj_r(s_img[j]) == expect, "p . s != id"

    # quotient structure must agree with alg
    for i in range(dr):
        for j in range(dr):
            assert proj_r(ext.multiply(s_img[i], s_img[j])) == \
                alg.basis_product(i, j), "quotient product mismatch"
        assert proj_r(ext.apply_avg(s_img[i])) == \
            alg.avg.col(i), "quotient operator mismatch"

    # induced actions r.m = s(r) m, m.r = m s(r); A_M = operator on M
    left, right = [], []
    for i in range(dr):
        lm = [f.zero] * (dm * dm)
        rm = [f.zero] * (dm * dm)
        for a in range(dm):
            ma = ext.basis_vector(dr + a)
            lv = proj_m(ext.multiply(s_img[i], ma))
            rv = proj_m(ext.multiply(ma, s_img[i]))
            for k in range(dm):
                lm[k * dm + a] = lv[k]
                rm[k * dm + a] = rv[k]
        left.append(DenseMatrix(f, dm, dm, lm))
        right.append(DenseMatrix(f, dm, dm, rm))
    am = [f.zero] * (dm * dm)
    for a in range(dm):
        v = proj_m(ext.apply_avg(ext.basis_vector(dr + a)))
        for k in range(dm):
            am[k * dm + a] = v[k]
    module = AvBimodule(alg, dm, left, right, DenseMatrix(f, dm, dm, am),
                        name="induced")

    datum = ExtensionDatum.zero(alg, module)
    for i in range(dr):
        for j in range(dr):
            v = ext.multiply(s_img[i], s_img[j])
            prod = alg.basis_product(i, j)
            sv = [f.zero] * ext.dim
            for k in range(dr):
                if not f.is_zero(prod[k]):
                    sv = [f.add(u, f.mul(prod[k], w))
                          for u, w in zip(sv, s_img[k])]
            dvec = [f.sub(a_, b_) for a_, b_ in zip(v, sv)]
            assert is_m(dvec)
            datum.psi[i][j] = proj_m(dvec)
        v = ext.apply_avg(s_img[i])
        avec = alg.avg.col(i)
        sv = [f.zero] * ext.dim
        for k in range(dr):
            if not f.is_zero(avec[k]):
                sv = [f.add(u, f.mul(avec[k], w)) for u, w in zip(sv, s_img[k])]
        dvec = [f.sub(a_, b_) for a_, b_ in zip(v, sv)]
        assert is_m(dvec)
        datum.chi[i] = proj_m(dvec)
    return datum, module


def extensions_isomorphic(d1, d2, alg, module, context=None):
    """gamma: R -> M with d1 - d2 = (delta gamma, -Phi^1 gamma), or None.

    Both data must be cocycles.  The solve is one linear system over the
    entries of gamma; ties resolve to the echelon-canonical solution.
    """
    ctx = context or ExtensionContext(alg, module)
    if not (ctx.is_cocycle(d1) and ctx.is_cocycle(d2)):
        raise NotACocycle("isomorphism test expects cocycle data")
    f = module.field
    dr, dm = alg.dim, module.dim
    # columns: image of the unit gamma with single entry (a <- j)
    cols = []
    for j in range(dr):
        for a in range(dm):
            gamma = DenseMatrix(f, dm, dr).with_entry(a, j, f.one)
            cols.append(ctx.gamma_coboundary(gamma).to_vector(alg, module))
    size = hoch_dim(module, 2) + dr * dm
    mat = from_columns(f, cols, size) if cols else DenseMatrix(f, size, 0)
    rhs = d1.sub(d2, f).to_vector(alg, module)
    sol = solve(mat, rhs)
    if sol is None:
        return None
    gamma = DenseMatrix(f, dm, dr)
    ents = list(gamma.entries)
    pos = 0
    for j in range(dr):
        for a in range(dm):
            ents[a * dr + j] = sol[pos]
            pos += 1
    return DenseMatrix(f, dm, dr, ents)


def classify(alg, module, context=None):
    """dim H^2 of the totalized complex and one cocycle per class."""
    ctx = context or ExtensionContext(alg, module)
    node = CohomologySpace(ctx.ava.diffs[1], ctx.ava.diffs[2])
    reps = [ExtensionDatum.from_vector(alg, module, v) for v in node.complement]
    return node.dim, reps


def classification_report(alg, module):
    dim, reps = classify(alg, module)
    rep = Report("abelian extensions of %s" % (alg.name or "R"))
    rep.note("h2", str(dim))
    rep.note("representatives", str(len(reps)))
    return rep
