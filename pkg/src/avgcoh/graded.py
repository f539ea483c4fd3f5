"""Graded vector spaces, sign conventions, and graded multilinear maps.

Scalars here are always rational (fractions.Fraction): the bracket calculus
divides by factorials, so prime fields are not allowed on this path.

Conventions, fixed once and used everywhere:

  * a permutation is a tuple p with p[k] the 0-based original position of
    the k-th element of the permuted sequence, i.e. the permuted sequence
    is (x[p[0]], x[p[1]], ...);
  * the Koszul sign of p on degrees (d_0..d_{n-1}) is the product of
    (-1)^{d_a d_b} over inversions, and chi(p) = sgn(p) * koszul(p);
  * maps are stored on suspended or plain tensor powers of one graded
    space; the suspension is a re-indexing view (coefficients shared), and
    all degree arithmetic flows through dom_deg/cod_deg so the shift lives
    in exactly one place;
  * evaluating a tensor product of maps costs the usual crossing signs:
    slot k picks up (-1)^{|slot_k| * (degrees consumed by slots < k)}.
"""

from fractions import Fraction
from itertools import combinations, product as iproduct

from . import budget


class LengthMismatch(Exception):
    pass


class TooManyArguments(Exception):
    pass


class GradedVectorSpace:
    """Finite graded space: a degree per basis index."""

    def __init__(self, degrees):
        self.degrees = tuple(int(d) for d in degrees)

    @classmethod
    def from_dims(cls, dims):
        """dims: {degree: size}; basis ordered by degree, then position."""
        degs = []
        for d in sorted(dims):
            degs.extend([d] * dims[d])
        return cls(degs)

    @property
    def dim(self):
        return len(self.degrees)

    def deg(self, i):
        return self.degrees[i]

    def __eq__(self, other):
        return isinstance(other, GradedVectorSpace) and \
            self.degrees == other.degrees

    def __hash__(self):
        return hash(self.degrees)

    def __repr__(self):
        return "GradedVectorSpace(%s)" % (self.degrees,)


def sign_of_perm(perm):
    n = len(perm)
    sgn = 1
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b]:
                sgn = -sgn
    return sgn


def koszul_sign(perm, degrees):
    """Sign from reordering graded symbols: inversions weight (-1)^{d d'}."""
    if len(perm) != len(degrees):
        raise LengthMismatch("permutation and degree list differ in length")
    sgn = 1
    n = len(perm)
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b] and (degrees[perm[a]] % 2) and (degrees[perm[b]] % 2):
                sgn = -sgn
    return sgn


def chi_sign(perm, degrees):
    return sign_of_perm(perm) * koszul_sign(perm, degrees)


def shuffles(i, j):
    """All (i, j)-shuffles of range(i + j), lexicographic in the first block."""
    assert i >= 0 and j >= 0
    n = i + j
    out = []
    for front in combinations(range(n), i):
        back = tuple(k for k in range(n) if k not in front)
        out.append(front + back)
    return out


def shuffle_factorize(perm, i):
    """The unique (shuffle, front permutation, back permutation) splitting.

    perm = sigma o (delta + tau) in the block sense: perm[k] = sigma[delta[k]]
    for k < i and perm[i + m] = sigma[i + tau[m]].
    """
    n = len(perm)
    assert 0 <= i <= n
    front, back = perm[:i], perm[i:]
    sf, sb = sorted(front), sorted(back)
    sigma = tuple(sf) + tuple(sb)
    delta = tuple(sf.index(x) for x in front)
    tau = tuple(sb.index(x) for x in back)
    return sigma, delta, tau


class GradedMap:
    """Homogeneous multilinear map between tensor powers of one space.

    coeffs maps input index tuples to {output index: Fraction}.  dom_sv and
    cod_sv say whether the domain/codomain is read in the suspended grading
    (degree + 1 per slot / on the output).
    """

    __slots__ = ("space", "arity", "degree", "dom_sv", "cod_sv", "coeffs")

    def __init__(self, space, arity, degree, dom_sv, cod_sv, coeffs=None):
        self.space = space
        self.arity = arity
        self.degree = degree
        self.dom_sv = dom_sv
        self.cod_sv = cod_sv
        self.coeffs = {} if coeffs is None else coeffs

    def dom_deg(self, i):
        return self.space.deg(i) + (1 if self.dom_sv else 0)

    def cod_deg(self, j):
        return self.space.deg(j) + (1 if self.cod_sv else 0)

    def entry_allowed(self, tup, out):
        return self.cod_deg(out) == sum(self.dom_deg(i) for i in tup) + self.degree

    def set_entry(self, tup, out, val):
        tup = tuple(tup)
        assert len(tup) == self.arity
        assert self.entry_allowed(tup, out), \
            "entry %s -> %s violates degree %d" % (tup, out, self.degree)
        if val == 0:
            self.coeffs.get(tup, {}).pop(out, None)
            return
        self.coeffs.setdefault(tup, {})[out] = Fraction(val)

    def add_entry(self, tup, out, val):
        tup = tuple(tup)
        cur = self.coeffs.get(tup, {}).get(out, Fraction(0))
        self.set_entry(tup, out, cur + val)

    def entries(self):
        for tup, outs in self.coeffs.items():
            for out, val in outs.items():
                if val != 0:
                    yield tup, out, val

    def is_zero(self):
        return all(val == 0 for _, _, val in self.entries())

    def same_shape(self, other):
        return (self.space == other.space and self.arity == other.arity
                and self.degree == other.degree and self.dom_sv == other.dom_sv
                and self.cod_sv == other.cod_sv)

    def add(self, other):
        assert self.same_shape(other)
        out = self.copy()
        for tup, o, val in other.entries():
            out.add_entry(tup, o, val)
        return out

    def scale(self, c):
        c = Fraction(c)
        out = GradedMap(self.space, self.arity, self.degree,
                        self.dom_sv, self.cod_sv)
        if c == 0:
            return out
        for tup, o, val in self.entries():
            out.set_entry(tup, o, c * val)
        return out

    def neg(self):
        return self.scale(-1)

    def sub(self, other):
        return self.add(other.neg())

    def copy(self):
        return GradedMap(self.space, self.arity, self.degree, self.dom_sv,
                         self.cod_sv,
                         {t: dict(d) for t, d in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedMap) or not self.same_shape(other):
            return NotImplemented if not isinstance(other, GradedMap) else False
        return self.sub(other).is_zero()

    def __hash__(self):
        return hash((self.arity, self.degree, self.dom_sv, self.cod_sv))

    def suspend_output(self):
        assert not self.cod_sv
        return GradedMap(self.space, self.arity, self.degree + 1,
                         self.dom_sv, True, self.coeffs)

    def unsuspend_output(self):
        assert self.cod_sv
        return GradedMap(self.space, self.arity, self.degree - 1,
                         self.dom_sv, False, self.coeffs)

    def __repr__(self):
        body = ", ".join("%s->%d:%s" % (t, o, v) for t, o, v in self.entries())
        return "GradedMap(arity=%d, deg=%d%s%s, {%s})" % (
            self.arity, self.degree, " sdom" if self.dom_sv else "",
            " scod" if self.cod_sv else "", body)


def compose(outer, slots):
    """outer . (s_1 x ... x s_n) with Koszul crossing signs.

    slots entries are GradedMap instances or None for an identity slot.
    Every real slot must output into the outer domain's suspension; all
    slots share one domain suspension, which the composite inherits.
    """
    assert len(slots) == outer.arity
    space = outer.space
    dom_sv = None
    for s in slots:
        if s is not None:
            assert s.cod_sv == outer.dom_sv, "slot codomain mismatch"
            if dom_sv is None:
                dom_sv = s.dom_sv
            else:
                assert s.dom_sv == dom_sv, "slots disagree on domain suspension"
    if dom_sv is None:
        dom_sv = outer.dom_sv  # all-identity slots
    arity = sum(1 if s is None else s.arity for s in slots)
    degree = outer.degree + sum(0 if s is None else s.degree for s in slots)
    result = GradedMap(space, arity, degree, dom_sv, outer.cod_sv)

    def slot_entries(s):
        if s is None:
            return [((i,), i, Fraction(1)) for i in range(space.dim)]
        return list(s.entries())

    def slot_deg(s):
        return 0 if s is None else s.degree

    all_entries = [slot_entries(s) for s in slots]
    if any(not e for e in all_entries):
        return result
    sv_shift = 1 if dom_sv else 0
    for combo in iproduct(*all_entries):
        budget.spend()
        sign = 1
        consumed = 0  # running parity of consumed input degrees
        coeff = Fraction(1)
        in_tuple = ()
        out_tuple = []
        for s, (tup, out, val) in zip(slots, combo):
            d = slot_deg(s)
            if (d % 2) and (consumed % 2):
                sign = -sign
            coeff *= val
            in_tuple += tup
            out_tuple.append(out)
            consumed += sum(self_deg + sv_shift for self_deg in
                            (space.deg(i) for i in tup))
        hit = outer.coeffs.get(tuple(out_tuple))
        if not hit:
            continue
        for final, oval in hit.items():
            result.add_entry(in_tuple, final, sign * coeff * oval)
    return result


def bar_circ(f, gs):
    """f with the maps gs inserted into increasing argument slots, summed.

    The empty insertion returns f itself.  Inserting more maps than f has
    slots is an error.
    """
    if not gs:
        return f
    if len(gs) > f.arity:
        raise TooManyArguments("inserting %d maps into arity %d" %
                               (len(gs), f.arity))
    total = None
    for positions in combinations(range(f.arity), len(gs)):
        slots = [None] * f.arity
        for pos, g in zip(positions, gs):
            slots[pos] = g
        term = compose(f, slots)
        total = term if total is None else total.add(term)
    return total


def gerstenhaber(f, g):
    """[f, g] = f barcirc g - (-1)^{|f||g|} g barcirc f on Hom(T(sV), sV)."""
    assert f.dom_sv and f.cod_sv and g.dom_sv and g.cod_sv
    first = bar_circ(f, [g]) if f.arity >= 1 else None
    second = bar_circ(g, [f]) if g.arity >= 1 else None
    if second is not None and (f.degree * g.degree) % 2 == 0:
        second = second.neg()
    if first is None and second is None:
        arity = f.arity + g.arity - 1 if f.arity + g.arity >= 1 else 0
        return GradedMap(f.space, max(arity, 0), f.degree + g.degree, True, True)
    if first is None:
        return second
    if second is None:
        return first
    return first.add(second)
