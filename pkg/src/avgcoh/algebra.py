"""Averaging algebras and their bimodules.

An averaging algebra is an associative algebra R with a linear operator A
satisfying A(x)A(y) = A(A(x)y) = A(xA(y)).  Both the algebra and its
bimodules are stored by structure constants over an exact field, so every
axiom becomes a finite set of scalar identities that we check literally.

Index conventions (0-based):
  mul[i][j][k]   coefficient of e_k in e_i * e_j
  avg.get(i, j)  coefficient of e_i in A(e_j)   (columns are images)
  left[i]        matrix of m |-> e_i * m on bimodule coordinates
  right[i]       matrix of m |-> m * e_i
"""

from .linalg import DenseMatrix
from .report import Report


class DimensionMismatch(Exception):
    """Array shapes disagree with the declared dimension."""


class MissingUnit(Exception):
    """Operation requires the unit coordinates but none were supplied."""


def vec_fmt(field, v):
    return "(" + ", ".join(field.to_str(x) for x in v) + ")"


class AveragingAlgebra:
    """Structure constants + operator matrix, with an optional unit vector."""

    def __init__(self, field, dim, mul, avg, unit=None, name=""):
        if len(mul) != dim or any(len(r) != dim for r in mul) or any(
                len(c) != dim for r in mul for c in r):
            raise DimensionMismatch("structure constants are not dim^3")
        if avg.rows != dim or avg.cols != dim:
            raise DimensionMismatch("operator matrix is not dim x dim")
        if unit is not None and len(unit) != dim:
            raise DimensionMismatch("unit vector has wrong length")
        self.field = field
        self.dim = dim
        self.mul = mul
        self.avg = avg
        self.unit = unit
        self.name = name

    def basis_product(self, i, j):
        return list(self.mul[i][j])

    def multiply(self, x, y):
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if f.is_zero(yj):
                    continue
                c = f.mul(xi, yj)
                row = self.mul[i][j]
                for k in range(self.dim):
                    if not f.is_zero(row[k]):
                        out[k] = f.add(out[k], f.mul(c, row[k]))
        return out

    def apply_avg(self, x):
        return self.avg.apply(x)

    def basis_vector(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def with_operator(self, avg, name=""):
        return AveragingAlgebra(self.field, self.dim, self.mul, avg,
                                unit=self.unit, name=name or self.name)

    def __repr__(self):
        return "AveragingAlgebra(%r, dim=%d)" % (self.name, self.dim)


class AvBimodule:
    """Bimodule over an averaging algebra, with its own operator A_M."""

    def __init__(self, base, dim, left, right, avg_m, name=""):
        if len(left) != base.dim or len(right) != base.dim:
            raise DimensionMismatch("need one action matrix per algebra basis element")
        for mat in list(left) + list(right):
            if mat.rows != dim or mat.cols != dim:
                raise DimensionMismatch("action matrix is not dim_M x dim_M")
        if avg_m.rows != dim or avg_m.cols != dim:
            raise DimensionMismatch("A_M is not dim_M x dim_M")
        self.base = base
        self.field = base.field
        self.dim = dim
        self.left = left
        self.right = right
        self.avg_m = avg_m
        self.name = name

    def act_left_basis(self, i, m):
        return self.left[i].apply(m)

    def act_right_basis(self, i, m):
        return self.right[i].apply(m)

    def act_left(self, x, m):
        """x in R coordinates acting on m in M coordinates."""
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            im = self.left[i].apply(m)
            for k in range(self.dim):
                out[k] = f.add(out[k], f.mul(xi, im[k]))
        return out

    def act_right(self, m, x):
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            im = self.right[i].apply(m)
            for k in range(self.dim):
                out[k] = f.add(out[k], f.mul(xi, im[k]))
        return out

    def left_of(self, x):
        """Matrix of the left action of the algebra element x."""
        f = self.field
        acc = DenseMatrix.zeros(f, self.dim, self.dim)
        for i, xi in enumerate(x):
            if not f.is_zero(xi):
                acc = acc.add(self.left[i].scale(xi))
        return acc

    def right_of(self, x):
        f = self.field
        acc = DenseMatrix.zeros(f, self.dim, self.dim)
        for i, xi in enumerate(x):
            if not f.is_zero(xi):
                acc = acc.add(self.right[i].scale(xi))
        return acc

    def __repr__(self):
        return "AvBimodule(%r, dim=%d over %r)" % (self.name, self.dim, self.base.name)


def verify_averaging_algebra(alg):
    """Check associativity, the averaging law, and (if present) the unit.

    The report contains one entry per violated basis identity, carrying both
    sides' coordinates, so a hand-built example that fails tells you exactly
    where.  Empty report = valid.
    """
    f = alg.field
    rep = Report("averaging algebra%s" % (" %r" % alg.name if alg.name else ""))
    dim = alg.dim
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = alg.multiply(alg.basis_product(i, j), alg.basis_vector(k))
                rhs = alg.multiply(alg.basis_vector(i), alg.basis_product(j, k))
                if lhs != rhs:
                    rep.fail("assoc[%d,%d,%d]" % (i, j, k),
                             "lhs=%s rhs=%s" % (vec_fmt(f, lhs), vec_fmt(f, rhs)))
    for i in range(dim):
        ai = alg.apply_avg(alg.basis_vector(i))
        for j in range(dim):
            aj = alg.apply_avg(alg.basis_vector(j))
            both = alg.multiply(ai, aj)
            left = alg.apply_avg(alg.multiply(ai, alg.basis_vector(j)))
            right = alg.apply_avg(alg.multiply(alg.basis_vector(i), aj))
            if both != left:
                rep.fail("averaging-left[%d,%d]" % (i, j),
                         "A(x)A(y)=%s A(A(x)y)=%s" % (vec_fmt(f, both), vec_fmt(f, left)))
            if both != right:
                rep.fail("averaging-right[%d,%d]" % (i, j),
                         "A(x)A(y)=%s A(xA(y))=%s" % (vec_fmt(f, both), vec_fmt(f, right)))
    if alg.unit is not None:
        for i in range(dim):
            e = alg.basis_vector(i)
            lu = alg.multiply(alg.unit, e)
            ru = alg.multiply(e, alg.unit)
            if lu != e:
                rep.fail("unit-left[%d]" % i, "1*e=%s" % vec_fmt(f, lu))
            if ru != e:
                rep.fail("unit-right[%d]" % i, "e*1=%s" % vec_fmt(f, ru))
    return rep


def verify_bimodule(m):
    """Ordinary bimodule axioms only: left action, right action, compatibility."""
    rep = Report("bimodule%s" % (" %r" % m.name if m.name else ""))
    alg = m.base
    f = m.field
    for i in range(alg.dim):
        for j in range(alg.dim):
            prod = alg.basis_product(i, j)
            for a in range(m.dim):
                mv = _basis(f, m.dim, a)
                lhs = m.act_left(prod, mv)
                rhs = m.act_left_basis(i, m.act_left_basis(j, mv))
                if lhs != rhs:
                    rep.fail("left-action[%d,%d;%d]" % (i, j, a),
                             "(xy)m=%s x(ym)=%s" % (vec_fmt(f, lhs), vec_fmt(f, rhs)))
                lhs = m.act_right(mv, prod)
                rhs = m.act_right_basis(j, m.act_right_basis(i, mv))
                if lhs != rhs:
                    rep.fail("right-action[%d,%d;%d]" % (i, j, a),
                             "m(xy)=%s (mx)y=%s" % (vec_fmt(f, lhs), vec_fmt(f, rhs)))
                lhs = m.act_right_basis(j, m.act_left_basis(i, mv))
                rhs = m.act_left_basis(i, m.act_right_basis(j, mv))
                if lhs != rhs:
                    rep.fail("middle[%d,%d;%d]" % (i, j, a),
                             "(xm)y=%s x(my)=%s" % (vec_fmt(f, lhs), vec_fmt(f, rhs)))
    return rep


def verify_av_bimodule(m):
    """Bimodule axioms plus the operator compatibilities with A and A_M."""
    rep = verify_bimodule(m)
    alg = m.base
    f = m.field
    for i in range(alg.dim):
        ar = alg.apply_avg(alg.basis_vector(i))
        for a in range(m.dim):
            mv = _basis(f, m.dim, a)
            am = m.avg_m.apply(mv)
            both = m.act_left(ar, am)
            mid = m.avg_m.apply(m.act_left(ar, mv))
            inner = m.avg_m.apply(m.act_left_basis(i, am))
            if both != mid:
                rep.fail("avg-bimod-left-1[%d;%d]" % (i, a),
                         "A(r)Am(m)=%s Am(A(r)m)=%s" % (vec_fmt(f, both), vec_fmt(f, mid)))
            if both != inner:
                rep.fail("avg-bimod-left-2[%d;%d]" % (i, a),
                         "A(r)Am(m)=%s Am(rAm(m))=%s" % (vec_fmt(f, both), vec_fmt(f, inner)))
            both = m.act_right(am, ar)
            mid = m.avg_m.apply(m.act_right(am, alg.basis_vector(i)))
            inner = m.avg_m.apply(m.act_right(mv, ar))
            if both != mid:
                rep.fail("avg-bimod-right-1[%d;%d]" % (i, a),
                         "Am(m)A(r)=%s Am(Am(m)r)=%s" % (vec_fmt(f, both), vec_fmt(f, mid)))
            if both != inner:
                rep.fail("avg-bimod-right-2[%d;%d]" % (i, a),
                         "Am(m)A(r)=%s Am(mA(r))=%s" % (vec_fmt(f, both), vec_fmt(f, inner)))
    return rep


def _basis(field, dim, a):
    v = [field.zero] * dim
    v[a] = field.one
    return v


def star_product(alg):
    """(R, *, A) with x * y = x A(y); associative and again averaging."""
    f = alg.field
    dim = alg.dim
    mul = [[[f.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            aj = alg.apply_avg(alg.basis_vector(j))
            prod = alg.multiply(alg.basis_vector(i), aj)
            mul[i][j] = prod
    return AveragingAlgebra(f, dim, mul, alg.avg,
                            name=(alg.name + "*") if alg.name else "star")


def diamond_product(alg):
    """(R, <>, A) with x <> y = A(x) y."""
    f = alg.field
    dim = alg.dim
    mul = [[[f.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        ai = alg.apply_avg(alg.basis_vector(i))
        for j in range(dim):
            mul[i][j] = alg.multiply(ai, alg.basis_vector(j))
    return AveragingAlgebra(f, dim, mul, alg.avg,
                            name=(alg.name + "<>") if alg.name else "diamond")


def is_associative(alg):
    dim = alg.dim
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = alg.multiply(alg.basis_product(i, j), alg.basis_vector(k))
                rhs = alg.multiply(alg.basis_vector(i), alg.basis_product(j, k))
                if lhs != rhs:
                    return False
    return True


def unital_converse_check(alg):
    """For a unital algebra with an arbitrary operator: are * and <> associative?

    When they are, the operator is averaging (the two statements are
    equivalent for unital algebras), which the tests cross-check.
    """
    if alg.unit is None:
        raise MissingUnit("unital_converse_check needs the unit coordinates")
    return is_associative(star_product(alg)) and is_associative(diamond_product(alg))


def derived_bimodule(m, flavor):
    """The induced bimodule over (R, *) resp. (R, <>).

    star flavor:    x |- m = A(x)m - A_M(xm),   m -| x = m A(x)
    diamond flavor: x |> m = A(x)m,             m <| x = m A(x) - A_M(mx)

    Only the ordinary bimodule axioms over the derived product are promised;
    A_M is carried along unchanged.
    """
    assert flavor in ("star", "diamond")
    alg = m.base
    f = m.field
    left, right = [], []
    for i in range(alg.dim):
        ai = alg.apply_avg(alg.basis_vector(i))
        la = m.left_of(ai)
        ra = m.right_of(ai)
        if flavor == "star":
            left.append(la.sub(m.avg_m.mul(m.left[i])))
            right.append(ra)
        else:
            left.append(la)
            right.append(ra.sub(m.avg_m.mul(m.right[i])))
    base = star_product(alg) if flavor == "star" else diamond_product(alg)
    return AvBimodule(base, m.dim, left, right, m.avg_m,
                      name="%s(%s)" % (flavor, m.name or "M"))


def semidirect_sum(alg, m):
    """The averaging algebra on R + M with (a,m)(b,n) = (ab, an + mb), A + A_M."""
    f = alg.field
    dr, dm = alg.dim, m.dim
    dim = dr + dm
    mul = [[[f.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dr):
        for j in range(dr):
            prod = alg.basis_product(i, j)
            for k in range(dr):
                mul[i][j][k] = prod[k]
    for i in range(dr):
        for a in range(dm):
            im = m.act_left_basis(i, _basis(f, dm, a))
            for k in range(dm):
                mul[i][dr + a][dr + k] = im[k]
            im = m.act_right_basis(i, _basis(f, dm, a))
            for k in range(dm):
                mul[dr + a][i][dr + k] = im[k]
    avg = DenseMatrix.zeros(f, dim, dim)
    ents = list(avg.entries)
    for i in range(dr):
        for j in range(dr):
            ents[i * dim + j] = alg.avg.get(i, j)
    for a in range(dm):
        for b in range(dm):
            ents[(dr + a) * dim + (dr + b)] = m.avg_m.get(a, b)
    avg = DenseMatrix(f, dim, dim, ents)
    unit = None
    if alg.unit is not None and dm == 0:
        unit = list(alg.unit)
    return AveragingAlgebra(f, dim, mul, avg,
                            unit=unit,
                            name="%s|x%s" % (alg.name or "R", m.name or "M"))


def regular_bimodule(alg):
    """R acting on itself by multiplication, with A_M = A."""
    f = alg.field
    dim = alg.dim
    left, right = [], []
    for i in range(dim):
        lm = DenseMatrix.zeros(f, dim, dim)
        rm = DenseMatrix.zeros(f, dim, dim)
        lent, rent = list(lm.entries), list(rm.entries)
        for a in range(dim):
            li = alg.basis_product(i, a)
            ri = alg.basis_product(a, i)
            for k in range(dim):
                lent[k * dim + a] = li[k]
                rent[k * dim + a] = ri[k]
        left.append(DenseMatrix(f, dim, dim, lent))
        right.append(DenseMatrix(f, dim, dim, rent))
    return AvBimodule(alg, dim, left, right, alg.avg, name="reg")


def zero_bimodule(alg):
    f = alg.field
    zero = DenseMatrix.zeros(f, 0, 0)
    return AvBimodule(alg, 0, [zero] * alg.dim, [zero] * alg.dim, zero, name="0")


def averaging_law_holds(alg):
    """Fast boolean check of the averaging law only (early exit)."""
    images = [alg.apply_avg(alg.basis_vector(i)) for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(alg.dim):
            both = alg.multiply(images[i], images[j])
            if both != alg.apply_avg(alg.multiply(images[i], alg.basis_vector(j))):
                return False
            if both != alg.apply_avg(alg.multiply(alg.basis_vector(i), images[j])):
                return False
    return True


def random_operator(field, dim, rng, lo=-1, hi=1):
    ents = [field.from_int(rng.randint(lo, hi)) for _ in range(dim * dim)]
    return DenseMatrix(field, dim, dim, ents)


def sample_averaging_operators(alg, rng, count, max_tries=200000, lo=-1, hi=1):
    """Rejection sampling: draw random operators, keep the ones that verify.

    There is no usable parametrization of averaging operators, so testing is
    the construction.  Deterministic for a seeded rng.  The base product is
    fixed, so only the averaging law is re-tested per candidate.
    """
    assert is_associative(alg), "sampling assumes an associative base product"
    found = []
    seen = set()
    tries = 0
    while len(found) < count and tries < max_tries:
        tries += 1
        op = random_operator(alg.field, alg.dim, rng, lo, hi)
        key = tuple(op.entries)
        if key in seen:
            continue
        seen.add(key)
        cand = alg.with_operator(op)
        if averaging_law_holds(cand):
            found.append(cand)
    return found
