"""Homotopy averaging structures on a graded space.

An operator family {m_n (arity n, degree n-2)} u {A (degree 0)} u
{A_n^r, A_n^l (arity n >= 2, degree n-1)} is a homotopy averaging algebra
when three identity families vanish: the Stasheff identities for the m's,
and one comparison family per flavor mixing the m's with the A-family.

The same data is, equivalently, a degree-(-1) element of the reduced
bracket complex (no arity-0 components) satisfying the generalized
Maurer-Cartan equation; the two routes are implemented independently, and
their agreement is what pins every sign on either side.
"""

from .graded import GradedMap, GradedVectorSpace, compose
from .linfty import (HOCH, OP, OPL, OPR, CAvAElement, build_brackets,
                     mc_residual)
from .report import Report


class UnreducedElement(Exception):
    """The element has an arity-0 component and is not in the reduced complex."""


def plain_map(space, arity, degree):
    return GradedMap(space, arity, degree, False, False)


class HomotopyAveragingStructure:
    """m: {arity: map}, a1: the arity-1 operator, ar/al: {arity >= 2: map}."""

    def __init__(self, space, m=None, a1=None, ar=None, al=None):
        self.space = space
        self.m = dict(m or {})
        self.a1 = a1
        self.ar = dict(ar or {})
        self.al = dict(al or {})
        for n, gm in self.m.items():
            assert gm.arity == n and gm.degree == n - 2 and \
                not gm.dom_sv and not gm.cod_sv
        if a1 is not None:
            assert a1.arity == 1 and a1.degree == 0 and \
                not a1.dom_sv and not a1.cod_sv
        for fam in (self.ar, self.al):
            for n, gm in fam.items():
                assert n >= 2 and gm.arity == n and gm.degree == n - 1 and \
                    not gm.dom_sv and not gm.cod_sv

    def mul(self, n):
        return self.m.get(n)

    def op(self, flavor, n):
        if n == 1:
            return self.a1
        return (self.ar if flavor == "r" else self.al).get(n)

    def max_arity(self):
        tops = [1 if self.a1 is not None else 0]
        tops.extend(self.m.keys())
        tops.extend(self.ar.keys())
        tops.extend(self.al.keys())
        return max(tops)


def _suspension_sign(space, tup):
    """Koszul sign of moving a tensor power of the shift past the inputs."""
    n = len(tup)
    exp = sum((n - 1 - idx) * space.deg(i) for idx, i in enumerate(tup))
    return -1 if exp % 2 else 1


def _to_suspended(space, gm, cod_sv):
    """Same coefficients with per-tuple suspension signs, domain suspended."""
    out = GradedMap(space, gm.arity, gm.degree - gm.arity, True, cod_sv)
    for tup, o, val in gm.entries():
        out.add_entry(tup, o, val * _suspension_sign(space, tup))
    return out


def _to_plain(space, gm):
    out = GradedMap(space, gm.arity, gm.degree + gm.arity, False, gm.cod_sv)
    for tup, o, val in gm.entries():
        out.add_entry(tup, o, val * _suspension_sign(space, tup))
    return out


def to_mc_bar(h):
    """The reduced-complex element of a homotopy averaging structure."""
    space = h.space
    el = CAvAElement(space)
    for _, gm in sorted(h.m.items()):
        el.add_part(HOCH, _to_suspended(space, gm.suspend_output(), True))
    if h.a1 is not None:
        el.add_part(OP, _to_suspended(space, h.a1, False))
    for _, gm in sorted(h.ar.items()):
        el.add_part(OPR, _to_suspended(space, gm, False))
    for _, gm in sorted(h.al.items()):
        el.add_part(OPL, _to_suspended(space, gm, False))
    return el


def from_mc_bar(alpha):
    """Inverse conversion; rejects elements with arity-0 components."""
    if alpha.component(HOCH, 0) is not None or alpha.component(OP, 0) is not None:
        raise UnreducedElement("arity-0 component present")
    space = alpha.space
    m, ar, al = {}, {}, {}
    a1 = None
    for (block, arity), gm in alpha.items():
        if block == HOCH:
            m[arity] = _to_plain(space, gm).unsuspend_output()
        elif block == OP:
            a1 = _to_plain(space, gm)
        elif block == OPR:
            ar[arity] = _to_plain(space, gm)
        else:
            al[arity] = _to_plain(space, gm)
    return HomotopyAveragingStructure(space, m, a1, ar, al)


def _compositions(n, k):
    """All k-tuples of positive integers summing to n."""
    if k == 1:
        return [(n,)] if n >= 1 else []
    out = []
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            out.append((first,) + rest)
    return out


def homotopy_identity_residual(h, n, which):
    """The arity-n identity of the requested family, as a plain map.

    which = "i": the Stasheff sum over (prefix, inner, suffix) splittings
    with sign (-1)^{prefix + inner*suffix}.
    which = "ii"/"iii": the flavored comparison families
      sum over compositions (l_1..l_k) of n, with the overall sign
      (-1)^{n(n-1)/2 + k(k-1)/2 + sum_j (k-j+1) l_j}, of
      m_k(A_{l_1} x..x A_{l_k}) minus a wrapped sum where A_{l_1}
      (resp. A_{l_k}) encloses m_k with one free slot.
    Missing family members are zero maps, and A_1 means the operator.
    """
    assert which in ("i", "ii", "iii")
    space = h.space
    if which == "i":
        res = plain_map(space, n, n - 3)
        for j in range(1, n + 1):
            inner = h.mul(j)
            if inner is None:
                continue
            for p in range(0, n - j + 1):
                q = n - j - p
                outer = h.mul(p + 1 + q)
                if outer is None:
                    continue
                slots = [None] * (p + 1 + q)
                slots[p] = inner
                term = compose(outer, slots)
                if (p + j * q) % 2:
                    term = term.neg()
                res = res.add(term)
        return res

    flavor = "r" if which == "ii" else "l"
    res = plain_map(space, n, n - 2)
    for k in range(1, n + 1):
        for parts in _compositions(n, k):
            eps = n * (n - 1) // 2 + k * (k - 1) // 2 + \
                sum((k - j) * parts[j] for j in range(k))
            sign = -1 if eps % 2 else 1
            mk = h.mul(k)
            ops = [h.op(flavor, l) for l in parts]
            if mk is not None and all(o is not None for o in ops):
                res = res.add(compose(mk, ops).scale(sign))
            if which == "ii":
                l_out = parts[0]
                inner_ops = [h.op(flavor, l) for l in parts[1:]]
                wrap_exp_base = sum(l - 1 for l in parts[1:])
                mid_slots = [None] + inner_ops
                extra = lambda p, q: q * wrap_exp_base + k * p + q
            else:
                l_out = parts[-1]
                inner_ops = [h.op(flavor, l) for l in parts[:-1]]
                e_front = sum(l - 1 for l in parts[:-1])
                s_front = sum(parts[:-1])
                mid_slots = inner_ops + [None]
                extra = lambda p, q: p * e_front + (l_out - 1) * s_front + \
                    k * p + q
            outer_op = h.op(flavor, l_out)
            if mk is None or outer_op is None or \
                    any(o is None for o in inner_ops):
                continue
            mid = compose(mk, mid_slots)
            for p in range(0, l_out):
                q = l_out - 1 - p
                slots = [None] * l_out
                slots[p] = mid
                term = compose(outer_op, slots)
                if (extra(p, q) % 2) == 0:
                    term = term.neg()
                res = res.add(term.scale(sign))
    return res


def all_identity_residuals_vanish(h, cap):
    for n in range(1, cap + 1):
        for which in ("i", "ii", "iii"):
            if not homotopy_identity_residual(h, n, which).is_zero():
                return False
    return True


def bar_stasheff_residual(h, n):
    """Independent route for the Stasheff family: the suspended sum carries
    no signs at all; its vanishing must agree with the plain family."""
    space = h.space
    bs = {k: _to_suspended(space, gm.suspend_output(), True)
          for k, gm in h.m.items()}
    res = GradedMap(space, n, -2, True, True)
    for j in range(1, n + 1):
        inner = bs.get(j)
        if inner is None:
            continue
        for p in range(0, n - j + 1):
            q = n - j - p
            outer = bs.get(p + 1 + q)
            if outer is None:
                continue
            slots = [None] * (p + 1 + q)
            slots[p] = inner
            res = res.add(compose(outer, slots))
    return res


def mc_block_vanishes(residual, block, arity):
    gm = residual.component(block, arity)
    return gm is None or gm.is_zero()


def identities_agree_with_mc(h, cap):
    """Per-arity, per-family comparison of the two definitions."""
    el = to_mc_bar(h)
    brackets = build_brackets(h.space, max(cap + 1, 4))
    res = mc_residual(brackets, el)
    for n in range(1, cap + 1):
        ident_i = homotopy_identity_residual(h, n, "i").is_zero()
        ident_r = homotopy_identity_residual(h, n, "ii").is_zero()
        ident_l = homotopy_identity_residual(h, n, "iii").is_zero()
        if ident_i != mc_block_vanishes(res, HOCH, n):
            return False
        if n == 1:
            if (ident_r and ident_l) != mc_block_vanishes(res, OP, 1):
                return False
        else:
            if ident_r != mc_block_vanishes(res, OPR, n):
                return False
            if ident_l != mc_block_vanishes(res, OPL, n):
                return False
    return True


def strict_structure(alg):
    """Embed an averaging algebra as a degree-0 homotopy structure."""
    space = GradedVectorSpace([0] * alg.dim)
    m2 = plain_map(space, 2, 0)
    for i in range(alg.dim):
        for j in range(alg.dim):
            vec = alg.basis_product(i, j)
            for k in range(alg.dim):
                if vec[k] != 0:
                    m2.set_entry((i, j), k, vec[k])
    a1 = plain_map(space, 1, 0)
    for j in range(alg.dim):
        for i in range(alg.dim):
            v = alg.avg.get(i, j)
            if v != 0:
                a1.set_entry((j,), i, v)
    return HomotopyAveragingStructure(space, {2: m2}, a1, {}, {})


def chain_homotopy_report(h):
    """How far the operator is from strict, and whether the arity-2
    correctors cancel the defects (the content of the low-arity displays)."""
    rep = Report("chain homotopy data")
    space = h.space
    m1 = h.mul(1) or plain_map(space, 1, -1)
    m2 = h.mul(2) or plain_map(space, 2, 0)
    a = h.a1 or plain_map(space, 1, 0)
    sq = compose(m1, [m1])
    rep.add("m1-differential", sq.is_zero())
    comm = compose(m1, [a]).sub(compose(a, [m1]))
    rep.add("operator-chain-map", comm.is_zero(),
            "" if comm.is_zero() else "m1 A != A m1")
    for flavor, tag in (("r", "right"), ("l", "left")):
        if flavor == "r":
            defect = compose(m2, [a, a]).sub(
                compose(a, [compose(m2, [None, a])]))
        else:
            defect = compose(m2, [a, a]).sub(
                compose(a, [compose(m2, [a, None])]))
        a2 = h.op(flavor, 2)
        if a2 is None:
            rep.add("defect-%s" % tag, defect.is_zero(),
                    "" if defect.is_zero() else "no arity-2 corrector supplied")
            continue
        healed = defect.add(compose(m1, [a2])) \
            .add(compose(a2, [m1, None])).add(compose(a2, [None, m1]))
        rep.add("defect-%s-cancelled" % tag, healed.is_zero())
    return rep
