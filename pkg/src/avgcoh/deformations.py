"""Order-by-order formal deformations of an averaging algebra.

A jet is a truncated pair of power series: multiplications mu_0..mu_N and
operators A_0..A_N with (mu_0, A_0) the base structure.  The jet is a
deformation to order N when the three residual families (associativity and
the two averaging comparisons) vanish for every n <= N; at n = 1 this is
the statement that (mu_1, A_1) is a 2-cocycle of the totalized complex.
"""

from .algebra import regular_bimodule
from .complexes import (AVO_DEG1, HOCHSCHILD, Cochain, assemble_ava_complex,
                        CohomologySpace, flat_index, hoch_dim, hochschild_delta,
                        hochschild_matrix, partial_l, partial_r, phi, tuples)
from .linalg import DenseMatrix, solve
from .report import Report


class OrderOutOfRange(Exception):
    pass


class NotADeformationAtOrder1(Exception):
    pass


class DeformationJet:
    """mu_list[i][a][b] is the coordinate vector of mu_i(e_a, e_b)."""

    def __init__(self, base, mu_list, a_list):
        assert len(mu_list) == len(a_list) >= 1
        assert mu_list[0] == base.mul, "mu_0 must be the base multiplication"
        assert a_list[0] == base.avg, "A_0 must be the base operator"
        self.base = base
        self.mu_list = mu_list
        self.a_list = a_list

    @property
    def order(self):
        return len(self.mu_list) - 1

    @classmethod
    def constant(cls, base, order):
        f = base.field
        zero_mu = [[[f.zero] * base.dim for _ in range(base.dim)]
                   for _ in range(base.dim)]
        mus = [base.mul] + [[[list(col) for col in row] for row in zero_mu]
                            for _ in range(order)]
        ops = [base.avg] + [DenseMatrix.zeros(f, base.dim, base.dim)
                            for _ in range(order)]
        return cls(base, mus, ops)

    def with_order1(self, mu1, a1):
        """Copy of the constant jet with prescribed first-order coefficients."""
        jet = DeformationJet.constant(self.base, max(self.order, 1))
        jet.mu_list[1] = mu1
        jet.a_list[1] = a1
        return jet

    def mu_apply(self, idx, x, y):
        f = self.base.field
        out = [f.zero] * self.base.dim
        tensor = self.mu_list[idx]
        for a, xa in enumerate(x):
            if f.is_zero(xa):
                continue
            for b, yb in enumerate(y):
                if f.is_zero(yb):
                    continue
                c = f.mul(xa, yb)
                vec = tensor[a][b]
                for k in range(self.base.dim):
                    if not f.is_zero(vec[k]):
                        out[k] = f.add(out[k], f.mul(c, vec[k]))
        return out


def zero_mu_tensor(base):
    f = base.field
    return [[[f.zero] * base.dim for _ in range(base.dim)] for _ in range(base.dim)]


def deformation_residuals(jet, n):
    """The order-n obstructions: (associativity, left comparison, right comparison).

    Each is a table over basis tuples; the jet is a deformation to order N
    iff all three vanish for every n <= N.  Order 0 restates the base axioms.
    """
    if not 0 <= n <= jet.order:
        raise OrderOutOfRange("order %d outside jet range 0..%d" % (n, jet.order))
    base = jet.base
    f = base.field
    dim = base.dim
    basis = [base.basis_vector(i) for i in range(dim)]
    aimg = [[jet.a_list[i].apply(v) for v in basis] for i in range(n + 1)]

    t_ass = {}
    for (x, y, z) in tuples(dim, 3):
        acc = [f.zero] * dim
        for a in range(n + 1):
            b = n - a
            lhs = jet.mu_apply(a, jet.mu_list[b][x][y], basis[z])
            rhs = jet.mu_apply(a, basis[x], jet.mu_list[b][y][z])
            acc = [f.add(u, f.sub(p, q)) for u, p, q in zip(acc, lhs, rhs)]
        t_ass[(x, y, z)] = acc

    t_avol, t_avor = {}, {}
    for (x, y) in tuples(dim, 2):
        common = [f.zero] * dim
        left = [f.zero] * dim
        right = [f.zero] * dim
        for a in range(n + 1):
            for b in range(n + 1 - a):
                c = n - a - b
                common = [f.add(u, v) for u, v in zip(
                    common, jet.mu_apply(a, aimg[b][x], aimg[c][y]))]
                # A_a(mu_b(A_c(x), y)) and A_a(mu_b(x, A_c(y)))
                left = [f.add(u, v) for u, v in zip(
                    left, jet.a_list[a].apply(jet.mu_apply(b, aimg[c][x], basis[y])))]
                right = [f.add(u, v) for u, v in zip(
                    right, jet.a_list[a].apply(jet.mu_apply(b, basis[x], aimg[c][y])))]
        t_avol[(x, y)] = [f.sub(u, v) for u, v in zip(common, left)]
        t_avor[(x, y)] = [f.sub(u, v) for u, v in zip(common, right)]
    return t_ass, t_avol, t_avor


def residuals_vanish(jet, n):
    f = jet.base.field
    return all(all(f.is_zero(x) for v in table.values() for x in v)
               for table in deformation_residuals(jet, n))


def is_deformation(jet, up_to=None):
    up_to = jet.order if up_to is None else up_to
    return all(residuals_vanish(jet, n) for n in range(up_to + 1))


def mu_to_cochain(module, tensor):
    c = Cochain(HOCHSCHILD, 2, module)
    dim = module.base.dim
    for (i, j) in tuples(dim, 2):
        c.coeffs[flat_index((i, j), dim)] = list(tensor[i][j])
    return c


def op_to_cochain(module, mat):
    c = Cochain(AVO_DEG1, 1, module)
    for j in range(module.base.dim):
        c.coeffs[j] = mat.col(j)
    return c


def ava_two_cocycle_check(alg, module, mu1_cochain, a1_cochain):
    """delta(mu1) = 0 and the two flavored comparisons with Phi^2(mu1)."""
    if not hochschild_delta(mu1_cochain).is_zero():
        return False
    phir, phil = phi(mu1_cochain)
    if not partial_r(a1_cochain).add(
            Cochain(phir.kind, 2, module, phir.coeffs)).is_zero():
        return False
    if not partial_l(a1_cochain).add(
            Cochain(phil.kind, 2, module, phil.coeffs)).is_zero():
        return False
    return True


def infinitesimal_is_cocycle(jet):
    """Package (mu_1, A_1) as a degree-2 total cochain and test it is closed.

    Requires the jet to actually deform to order 1; the cocycle property is
    then a theorem, and this function is its executable restatement.
    """
    if jet.order < 1 or not (residuals_vanish(jet, 0) and residuals_vanish(jet, 1)):
        raise NotADeformationAtOrder1("order-1 residuals do not vanish")
    module = regular_bimodule(jet.base)
    mu1 = mu_to_cochain(module, jet.mu_list[1])
    a1 = op_to_cochain(module, jet.a_list[1])
    return ava_two_cocycle_check(jet.base, module, mu1, a1), (mu1, a1)


class FormalIso:
    """Truncated power series of linear maps with phi_0 = id."""

    def __init__(self, phi_list):
        assert phi_list, "need at least phi_0"
        field = phi_list[0].field
        assert phi_list[0] == DenseMatrix.identity(field, phi_list[0].rows), \
            "phi_0 must be the identity"
        self.phi_list = phi_list

    @property
    def order(self):
        return len(self.phi_list) - 1

    @classmethod
    def identity(cls, field, dim, order):
        return cls([DenseMatrix.identity(field, dim)] +
                   [DenseMatrix.zeros(field, dim, dim) for _ in range(order)])

    @classmethod
    def single(cls, field, dim, k, phik, order):
        """id + phik t^k, padded to the requested order."""
        mats = [DenseMatrix.identity(field, dim)] + \
            [DenseMatrix.zeros(field, dim, dim) for _ in range(order)]
        mats[k] = phik
        return cls(mats)

    def inverse_coeffs(self, order):
        field = self.phi_list[0].field
        dim = self.phi_list[0].rows
        inv = [DenseMatrix.identity(field, dim)]
        for n in range(1, order + 1):
            acc = DenseMatrix.zeros(field, dim, dim)
            for i in range(1, n + 1):
                if i <= self.order:
                    acc = acc.add(self.phi_list[i].mul(inv[n - i]))
            inv.append(acc.neg())
        return inv

    def compose(self, other, order):
        """Coefficients of self o other (self applied outermost)."""
        field = self.phi_list[0].field
        dim = self.phi_list[0].rows
        out = []
        for n in range(order + 1):
            acc = DenseMatrix.zeros(field, dim, dim)
            for i in range(n + 1):
                if i <= self.order and n - i <= other.order:
                    acc = acc.add(self.phi_list[i].mul(other.phi_list[n - i]))
            out.append(acc)
        return FormalIso(out)


def apply_formal_iso(jet, iso):
    """Transport the jet along the iso: the returned jet (mu', A') satisfies
    phi_t . mu'_t = mu_t . (phi_t x phi_t) and phi_t . A'_t = A_t . phi_t,
    truncated at the jet's order."""
    assert iso.order >= jet.order, "iso must cover the jet's order"
    base = jet.base
    f = base.field
    dim = base.dim
    order = jet.order
    inv = iso.inverse_coeffs(order)
    basis = [base.basis_vector(i) for i in range(dim)]
    phis = iso.phi_list

    mu_out = []
    for n in range(order + 1):
        tensor = zero_mu_tensor(base)
        for a in range(n + 1):
            for b in range(n + 1 - a):
                for c in range(n + 1 - a - b):
                    d = n - a - b - c
                    for i in range(dim):
                        px = phis[c].apply(basis[i])
                        for j in range(dim):
                            py = phis[d].apply(basis[j])
                            val = inv[a].apply(jet.mu_apply(b, px, py))
                            tensor[i][j] = [f.add(u, v) for u, v in
                                            zip(tensor[i][j], val)]
        mu_out.append(tensor)

    a_out = []
    for n in range(order + 1):
        acc = DenseMatrix.zeros(f, dim, dim)
        for a in range(n + 1):
            for b in range(n + 1 - a):
                c = n - a - b
                acc = acc.add(inv[a].mul(jet.a_list[b]).mul(phis[c]))
        a_out.append(acc)
    return DeformationJet(base, mu_out, a_out)


class DeformationContext:
    """Caches the regular bimodule and the low-degree total differentials."""

    def __init__(self, alg, cap=3):
        self.alg = alg
        self.module = regular_bimodule(alg)
        self.ava = assemble_ava_complex(alg, self.module, cap)

    def pair_to_vector(self, mu_tensor, a_mat):
        module = self.module
        return mu_to_cochain(module, mu_tensor).to_vector() + \
            op_to_cochain(module, a_mat).to_vector()

    def vector_to_pair(self, vec):
        dim = self.alg.dim
        h = hoch_dim(self.module, 2)
        mu = mu_to_tensor_from_vector(self.alg, vec[:h])
        a = DenseMatrix(self.alg.field, dim, dim,
                        _col_major_to_row_major(vec[h:], dim))
        return mu, a

    def is_cocycle_pair(self, mu_tensor, a_mat):
        return all(self.alg.field.is_zero(x) for x in
                   self.ava.diffs[2].apply(self.pair_to_vector(mu_tensor, a_mat)))


def mu_to_tensor_from_vector(alg, vec):
    dim = alg.dim
    tensor = zero_mu_tensor(alg)
    for (i, j) in tuples(dim, 2):
        t = flat_index((i, j), dim)
        tensor[i][j] = list(vec[t * dim:(t + 1) * dim])
    return tensor


def _col_major_to_row_major(vec, dim):
    # degree-1 operator cochains list f(e_j) blockwise; matrices are row-major
    ents = [None] * (dim * dim)
    for j in range(dim):
        for i in range(dim):
            ents[i * dim + j] = vec[j * dim + i]
    return ents


class TrivialityResult:
    def __init__(self, iso, obstruction_order=None, obstruction=None):
        self.iso = iso
        self.obstruction_order = obstruction_order
        self.obstruction = obstruction

    @property
    def trivial(self):
        return self.iso is not None


def triviality_search(jet, order=None, context=None):
    """Try, order by order, to trivialize the jet.

    At each order k the current coefficient pair (mu_k, A_k) is a 2-cocycle;
    the step succeeds iff it is exact, in which case a correction phi with
    delta(phi) = -mu_k and (phi A - A phi) = -A_k kills it.  On failure the
    obstructing order and representative are reported.
    """
    order = jet.order if order is None else order
    assert order <= jet.order
    assert is_deformation(jet, order), "triviality search needs a deformation"
    base = jet.base
    f = base.field
    dim = base.dim
    ctx = context or DeformationContext(base)
    module = ctx.module
    d1 = ctx.ava.diffs[1]
    total = FormalIso.identity(f, dim, order)
    current = jet
    for k in range(1, order + 1):
        mu_k, a_k = current.mu_list[k], current.a_list[k]
        if all(f.is_zero(x) for row in mu_k for v in row for x in v) \
                and a_k.is_zero():
            continue
        rhs = [f.neg(x) for x in ctx.pair_to_vector(mu_k, a_k)]
        sol = solve(d1, rhs)
        if sol is None:
            return TrivialityResult(None, k, (mu_k, a_k))
        h1 = hoch_dim(module, 1)
        phi_vec, x_vec = sol[:h1], sol[h1:]
        phi_mat = DenseMatrix(f, dim, dim, _col_major_to_row_major(phi_vec, dim))
        # absorb the Hom(k,R) part: phi - delta^0(x) has the same Hochschild
        # coboundary and matches the operator part on the nose
        x0 = list(x_vec)
        delta0 = _delta0_matrix(base, x0)
        phi_mat = phi_mat.sub(delta0)
        step = FormalIso.single(f, dim, k, phi_mat, order)
        current = apply_formal_iso(current, step)
        assert all(f.is_zero(x) for row in current.mu_list[k] for v in row for x in v)
        assert current.a_list[k].is_zero()
        total = total.compose(step, order)
    return TrivialityResult(total)


def _delta0_matrix(alg, x0):
    """Matrix of r |-> r x0 - x0 r."""
    f = alg.field
    dim = alg.dim
    cols = []
    for j in range(dim):
        e = alg.basis_vector(j)
        v = alg.multiply(e, x0)
        w = alg.multiply(x0, e)
        cols.append([f.sub(a, b) for a, b in zip(v, w)])
    ents = [f.zero] * (dim * dim)
    for j, col in enumerate(cols):
        for i, a in enumerate(col):
            ents[i * dim + j] = a
    return DenseMatrix(f, dim, dim, ents)


def rigidity_certificate(alg, cap=3):
    """dim H^2 of the totalized complex, with a witness cocycle when nonzero."""
    rep = Report("rigidity certificate%s" % (" %r" % alg.name if alg.name else ""))
    module = regular_bimodule(alg)
    ava = assemble_ava_complex(alg, module, cap)
    node = CohomologySpace(ava.diffs[1], ava.diffs[2])
    if node.dim == 0:
        rep.note("h2", "0")
        rep.note("verdict", "rigid (H2 = 0)")
    else:
        rep.note("h2", str(node.dim))
        witness = node.complement[0]
        rep.note("verdict",
                 "H2 dim = %d; sample non-trivial cocycle %s" %
                 (node.dim, "(" + ", ".join(alg.field.to_str(x) for x in witness) + ")"))
    return rep
