"""The graded bracket system on the total cochain space of a graded space V.

Elements live in five blocks: suspended-output multilinear maps of any arity
(the "hoch" block, Hom(T(sV), sV)), plain-output maps of arity 0 and 1
(shared between the two operator families), and flavored plain-output maps
of arity >= 2 ("opr" / "opl").  The brackets:

  * l_1 sends an arity-0 hoch element to its arity-0 operator shadow;
  * l_2 of two hoch elements is their Gerstenhaber bracket;
  * l_{n+1} of one arity-n hoch element and n operator elements is a
    signed sum over all orderings of the operator arguments of a plug-in
    term and a single bar-insertion term whose free slot sits at the first
    (right flavor) or last (left flavor) non-constant argument;
  * everything else vanishes.  Moving the hoch element out of front
    position costs the usual reordering sign.

A degree-(-1) element built from structure constants and an operator
matrix satisfies the generalized Maurer-Cartan equation exactly when the
algebra is an averaging algebra; twisting by it reproduces the totalized
cochain differential under the standard per-arity resigning
(-1)^{n(n+1)/2} of the suspension dictionary.
"""

from fractions import Fraction
from itertools import permutations as iperms
from math import factorial

from .graded import (GradedMap, GradedVectorSpace, bar_circ, chi_sign,
                     compose, gerstenhaber, shuffles)
from .linalg import DenseMatrix, QQ
from .report import Report


class ArityCapExceeded(Exception):
    pass


class CharacteristicError(Exception):
    pass


class NotMaurerCartan(Exception):
    pass


class ShapeError(Exception):
    pass


HOCH = "hoch"
OP = "op"
OPR = "opr"
OPL = "opl"


def _expected_shape(block, gm):
    if block == HOCH:
        return gm.dom_sv and gm.cod_sv
    if block == OP:
        return gm.dom_sv and not gm.cod_sv and gm.arity <= 1
    if block in (OPR, OPL):
        return gm.dom_sv and not gm.cod_sv and gm.arity >= 2
    return False


class CAvAElement:
    """A finite sum of homogeneous components across the five blocks."""

    def __init__(self, space):
        self.space = space
        self.parts = {}

    @classmethod
    def from_parts(cls, space, items):
        el = cls(space)
        for block, gm in items:
            el.add_part(block, gm)
        return el

    def add_part(self, block, gm):
        if not _expected_shape(block, gm):
            raise ShapeError("map shape does not fit block %r" % block)
        if gm.is_zero():
            return self
        key = (block, gm.arity)
        if key in self.parts:
            self.parts[key] = self.parts[key].add(gm)
            if self.parts[key].is_zero():
                del self.parts[key]
        else:
            self.parts[key] = gm
        return self

    def component(self, block, arity):
        return self.parts.get((block, arity))

    def items(self):
        return sorted(self.parts.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    def is_zero(self):
        return all(gm.is_zero() for gm in self.parts.values())

    def add(self, other):
        out = CAvAElement(self.space)
        for (block, _), gm in self.items():
            out.add_part(block, gm)
        for (block, _), gm in other.items():
            out.add_part(block, gm)
        return out

    def scale(self, c):
        out = CAvAElement(self.space)
        if Fraction(c) == 0:
            return out
        for (block, _), gm in self.items():
            out.add_part(block, gm.scale(c))
        return out

    def sub(self, other):
        return self.add(other.scale(-1))

    def degree(self):
        degs = {gm.degree for gm in self.parts.values() if not gm.is_zero()}
        if not degs:
            return None
        assert len(degs) == 1, "element is not degree-homogeneous"
        return degs.pop()

    def nonzero_blocks(self):
        return sorted({blk for (blk, _), gm in self.parts.items()
                       if not gm.is_zero()})

    def __repr__(self):
        keys = ", ".join("%s@%d" % k for k in sorted(self.parts))
        return "CAvAElement[%s]" % keys


def hoch_map(space, arity, degree):
    return GradedMap(space, arity, degree, True, True)


def op_map(space, arity, degree):
    return GradedMap(space, arity, degree, True, False)


class LInftyBrackets:
    """Bracket evaluator with a hard arity cap (the sums are factorial)."""

    def __init__(self, space, cap=4):
        assert cap >= 2
        self.space = space
        self.cap = cap

    def l(self, args):
        """Multilinear in each argument; args are CAvAElements."""
        n = len(args)
        if n > self.cap:
            raise ArityCapExceeded("l_%d exceeds cap %d" % (n, self.cap))
        out = CAvAElement(self.space)
        if n == 0:
            return out
        choices = [list(a.items()) for a in args]
        if any(not c for c in choices):
            return out
        stack = [[]]
        for c in choices:
            stack = [acc + [kv] for acc in stack for kv in c]
        for combo in stack:
            parts = [(blk, gm.arity, gm) for (blk, _), gm in combo]
            out = out.add(self._l_hom(parts))
        return out

    def _l_hom(self, parts):
        n = len(parts)
        space = self.space
        zero = CAvAElement(space)
        hoch_idx = [k for k, (b, _, _) in enumerate(parts) if b == HOCH]
        if n == 1:
            b, arity, gm = parts[0]
            if b == HOCH and arity == 0:
                return CAvAElement(space).add_part(OP, gm.unsuspend_output())
            return zero
        if n == 2 and len(hoch_idx) == 2:
            br = gerstenhaber(parts[0][2], parts[1][2])
            if br.is_zero():
                return zero
            return CAvAElement(space).add_part(HOCH, br)
        if len(hoch_idx) != 1:
            return zero
        i = hoch_idx[0]
        sh = parts[i][2]
        gs = [parts[k] for k in range(n) if k != i]
        if sh.arity != n - 1:
            return zero
        # reordering sign for moving the hoch element to the front
        pre_exp = sh.degree * sum(gm.degree for (_, _, gm) in gs[:i]) + i
        pre = -1 if pre_exp % 2 else 1

        flavors = {b for (b, _, _) in gs}
        if OPR in flavors and OPL in flavors:
            return zero
        out_arity = sum(a for (_, a, _) in gs)
        result = CAvAElement(space)
        if OPR in flavors:
            gm = self._flavored(sh, gs, "r")
            if gm is not None and not gm.is_zero():
                result.add_part(OPR, gm.scale(pre))
        elif OPL in flavors:
            gm = self._flavored(sh, gs, "l")
            if gm is not None and not gm.is_zero():
                result.add_part(OPL, gm.scale(pre))
        elif out_arity >= 2:
            gr = self._flavored(sh, gs, "r")
            gl = self._flavored(sh, gs, "l")
            if gr is not None and not gr.is_zero():
                result.add_part(OPR, gr.scale(pre))
            if gl is not None and not gl.is_zero():
                result.add_part(OPL, gl.scale(pre))
        else:
            gr = self._flavored(sh, gs, "r")
            gl = self._flavored(sh, gs, "l")
            same = (gr is None and gl is None) or \
                (gr is not None and gl is not None and gr == gl)
            assert same, "flavors disagree on a shared-block value"
            if gr is not None and not gr.is_zero():
                result.add_part(OP, gr.scale(pre))
        return result

    def _flavored(self, sh, gs, flavor):
        """Sum over orderings of the operator arguments, one flavor."""
        n = len(gs)
        degs = [gm.degree for (_, _, gm) in gs]
        total = None
        for p in iperms(range(n)):
            permuted = [gs[k] for k in p]
            chi = chi_sign(p, degs)
            eps = n * sh.degree
            for j in range(n - 1):
                eps += (n - 1 - j) * permuted[j][2].degree
            sign0 = chi * (-1 if eps % 2 else 1)
            sus = [gm.suspend_output() for (_, _, gm) in permuted]
            first = compose(sh, sus).unsuspend_output()
            term = first
            nonconst = [k for k in range(n) if permuted[k][1] >= 1]
            if nonconst:
                t = nonconst[0] if flavor == "r" else nonconst[-1]
                slots = list(sus)
                slots[t] = None
                inner = compose(sh, slots)
                plugged = bar_circ(permuted[t][2], [inner])
                s_exp = (permuted[t][2].degree + 1) * (
                    sh.degree + sum(permuted[k][2].degree + 1 for k in range(t)))
                if s_exp % 2 == 0:
                    plugged = plugged.neg()
                term = term.add(plugged)
            term = term.scale(sign0)
            total = term if total is None else total.add(term)
        return total


def build_brackets(space, cap=4):
    return LInftyBrackets(space, cap)


def linfty_identity_residual(brackets, elements):
    """The generalized Jacobi sum at the given homogeneous inputs.

    sum over splittings i + (n - i) and shuffles of
    chi(sigma) (-1)^{i(n-i)} l_{n-i+1}(l_i(front...) x back...)
    """
    n = len(elements)
    if n > brackets.cap:
        raise ArityCapExceeded("identity at %d inputs exceeds cap %d" %
                               (n, brackets.cap))
    degs = [el.degree() or 0 for el in elements]
    space = brackets.space
    out = CAvAElement(space)
    for i in range(1, n + 1):
        for p in shuffles(i, n - i):
            chi = chi_sign(p, degs)
            sgn = chi * (-1 if (i * (n - i)) % 2 else 1)
            inner = brackets.l([elements[p[k]] for k in range(i)])
            if inner.is_zero():
                continue
            outer = brackets.l([inner] + [elements[p[k]] for k in range(i, n)])
            out = out.add(outer.scale(sgn))
    return out


def mc_from_averaging(alg):
    """The degree-(-1) element encoding a multiplication and an operator.

    Works for any structure-constant pair; the residual vanishes exactly
    when the input is an averaging algebra.
    """
    if alg.field != QQ:
        raise CharacteristicError("bracket calculus requires the rationals")
    space = GradedVectorSpace([0] * alg.dim)
    m = hoch_map(space, 2, -1)
    for i in range(alg.dim):
        for j in range(alg.dim):
            vec = alg.basis_product(i, j)
            for k in range(alg.dim):
                if vec[k] != 0:
                    m.set_entry((i, j), k, vec[k])
    tau = op_map(space, 1, -1)
    for j in range(alg.dim):
        for i in range(alg.dim):
            v = alg.avg.get(i, j)
            if v != 0:
                tau.set_entry((j,), i, v)
    el = CAvAElement(space)
    if not m.is_zero():
        el.add_part(HOCH, m)
    if not tau.is_zero():
        el.add_part(OP, tau)
    return space, el


def averaging_from_mc(alpha, dim, brackets=None):
    """Rebuild the structure-constant pair from a candidate element.

    Returns (algebra, report).  The algebra is None when the residual does
    not vanish; the report then localizes the defect: the hoch block is the
    associativity defect, the opr/opl blocks are the two averaging
    comparisons (right: A(x A(y)), left: A(A(x) y)).
    """
    from .algebra import AveragingAlgebra
    space = alpha.space
    if any(space.deg(i) != 0 for i in range(space.dim)) or space.dim != dim:
        raise ShapeError("element must live over a degree-0 space of size %d" % dim)
    allowed = {(HOCH, 2), (OP, 1)}
    if any(key not in allowed for key in alpha.parts):
        raise ShapeError("element must have exactly an arity-2 product part "
                         "and an arity-1 operator part")
    m = alpha.component(HOCH, 2) or hoch_map(space, 2, -1)
    tau = alpha.component(OP, 1) or op_map(space, 1, -1)
    mul = [[[QQ.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), outs in m.coeffs.items():
        for k, v in outs.items():
            mul[i][j][k] = v
    ents = [QQ.zero] * (dim * dim)
    for (j,), outs in tau.coeffs.items():
        for i, v in outs.items():
            ents[i * dim + j] = v
    avg = DenseMatrix(QQ, dim, dim, ents)
    alg = AveragingAlgebra(QQ, dim, mul, avg, name="from-mc")
    br = brackets or build_brackets(space, 4)
    res = mc_residual(br, alpha)
    rep = Report("structure recovery")
    if res.is_zero():
        rep.note("residual", "0")
        return alg, rep
    blocks = res.nonzero_blocks()
    rep.fail("residual", "nonzero blocks: %s" % ", ".join(blocks))
    if HOCH in blocks:
        rep.fail("defect-associativity", "product part fails associativity")
    if OPR in blocks:
        rep.fail("defect-right", "A(x)A(y) vs A(x A(y)) comparison fails")
    if OPL in blocks:
        rep.fail("defect-left", "A(x)A(y) vs A(A(x) y) comparison fails")
    return None, rep


def mc_residual(brackets, alpha, cap=None):
    """sum_k 1/k! (-1)^{k(k-1)/2} l_k(alpha, ..., alpha), k up to the cap."""
    deg = alpha.degree()
    assert deg in (None, -1), "generalized flatness needs a degree -1 element"
    cap = brackets.cap if cap is None else min(cap, brackets.cap)
    out = CAvAElement(brackets.space)
    for k in range(1, cap + 1):
        term = brackets.l([alpha] * k)
        if term.is_zero():
            continue
        coeff = Fraction(1, factorial(k))
        if (k * (k - 1) // 2) % 2:
            coeff = -coeff
        out = out.add(term.scale(coeff))
    return out


class TwistedBrackets:
    """Brackets shifted by a flat degree-(-1) element.

    l^a_n(x...) = sum_i 1/i! (-1)^{(n+i)(n+i-1)/2 + n(n-1)/2}
                  l_{n+i}(a^i x...), truncated at the ambient cap.

    The sign is what the sign-free twist on the suspended side unsuspends
    to; it is input-independent, so the twisted family stays symmetric
    under the graded shuffle action, and it is pinned two ways by tests:
    the twisted unary bracket must both square to zero and reproduce the
    assembled total differential, and the twisted family must satisfy the
    generalized Jacobi identities.
    """

    def __init__(self, base, alpha):
        self.base = base
        self.space = base.space
        self.cap = base.cap
        self.alpha = alpha

    def l(self, args):
        n = len(args)
        if n > self.cap:
            raise ArityCapExceeded("l_%d exceeds cap %d" % (n, self.cap))
        out = CAvAElement(self.space)
        i = 0
        while n + i <= self.cap:
            term = self.base.l([self.alpha] * i + list(args))
            if not term.is_zero():
                coeff = Fraction(1, factorial(i))
                exp = (n + i) * (n + i - 1) // 2 + n * (n - 1) // 2
                if exp % 2:
                    coeff = -coeff
                out = out.add(term.scale(coeff))
            i += 1
        return out


def twist(brackets, alpha, check=True):
    if check and not mc_residual(brackets, alpha).is_zero():
        raise NotMaurerCartan("twisting needs a flat element")
    return TwistedBrackets(brackets, alpha)


def avo_dgla(alg, cap=5):
    """The operator-block differential and binary bracket of an algebra.

    Twisting by the algebra's flat element and restricting to the operator
    blocks leaves only a unary and a binary operation (the ternary one
    vanishes there), i.e. a differential graded Lie structure.  Returned as
    two callables on operator-block elements.
    """
    space, alpha = mc_from_averaging(alg)
    brackets = build_brackets(space, cap)
    tw = twist(brackets, alpha)

    def der(x):
        return tw.l([x])

    def bracket(x, y):
        return tw.l([x, y])

    return der, bracket


def dict_sign(block, arity):
    """Per-block resigning of the suspension dictionary.

    The cochain-coordinate basis vector of a degree-n piece corresponds to
    (-1)^{n(n-1)/2} times the bracket-side basis element on the suspended
    block and (-1)^{n(n+1)/2} times it on the operator blocks; conjugating
    the twisted unary bracket by these factors lands exactly on the
    assembled total differential.
    """
    exp = arity * (arity - 1) // 2 if block == HOCH else arity * (arity + 1) // 2
    return -1 if exp % 2 else 1


def _ava_block_layout(module, d):
    """(block tag, arity, count) pieces of the degree-d total space, in the
    coordinate order used by the complexes module."""
    dr, dm = module.base.dim, module.dim
    pieces = [(HOCH, d, dr ** d * dm)]
    if d - 1 == 0:
        pieces.append((OP, 0, dm))
    elif d - 1 == 1:
        pieces.append((OP, 1, dr * dm))
    elif d - 1 >= 2:
        pieces.append((OPR, d - 1, dr ** (d - 1) * dm))
        pieces.append((OPL, d - 1, dr ** (d - 1) * dm))
    return pieces


def _basis_element(space, block, arity, flat, dim):
    tup = []
    t = flat // dim
    out = flat % dim
    for _ in range(arity):
        tup.append(t % dim)
        t //= dim
    tup = tuple(reversed(tup))
    if block == HOCH:
        gm = hoch_map(space, arity, 1 - arity)
    else:
        gm = op_map(space, arity, -arity)
    gm.set_entry(tup, out, 1)
    return CAvAElement(space).add_part(block, gm)


def _coords_of(el, module, d):
    dim = module.base.dim
    out = []
    for block, arity, count in _ava_block_layout(module, d):
        gm = el.component(block, arity)
        for flat in range(count):
            t, o = flat // dim, flat % dim
            tup = []
            tt = t
            for _ in range(arity):
                tup.append(tt % dim)
                tt //= dim
            tup = tuple(reversed(tup))
            val = QQ.zero
            if gm is not None:
                val = gm.coeffs.get(tup, {}).get(o, QQ.zero)
            out.append(val)
    return out


def twisted_l1_ava_matrix(twisted, module, d):
    """The twisted unary bracket on the degree-d total space, conjugated by
    the per-arity dictionary sign, in the coordinates of the complexes
    module.  Equality with the assembled total differential is the
    executable content of the comparison statement."""
    space = twisted.space
    dim = module.base.dim
    src = _ava_block_layout(module, d)
    tgt = _ava_block_layout(module, d + 1)
    rows = sum(c for _, _, c in tgt)
    cols = []
    for block, arity, count in src:
        for flat in range(count):
            e = _basis_element(space, block, arity, flat, dim)
            img = twisted.l([e])
            col = _coords_of(img, module, d + 1)
            factor = dict_sign(block, arity)
            col = [QQ.mul(QQ.from_int(factor), v) for v in col]
            # divide per target block by its dictionary sign
            pos = 0
            fixed = []
            for tblock, tarity, tcount in tgt:
                tfac = dict_sign(tblock, tarity)
                for _ in range(tcount):
                    v = col[pos]
                    fixed.append(QQ.mul(QQ.from_int(tfac), v))
                    pos += 1
            cols.append(fixed)
    from .linalg import from_columns
    return from_columns(QQ, cols, rows) if cols else DenseMatrix(QQ, rows, 0)
