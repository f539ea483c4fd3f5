"""Exact scalars and dense matrices over Q or a prime field F_p.

Everything downstream (axiom checks, cochain differentials, cohomology
dimensions, the bracket calculus) reduces to rank / kernel / solve done here.
No floating point anywhere: Q values are fractions.Fraction, F_p values are
canonical representatives in [0, p).

Elimination runs on sparse row dictionaries internally; the public matrix
type stays dense row-major because the instances are small and the tests
want positional access.
"""

from fractions import Fraction

from . import budget


class CompositionNonzero(Exception):
    """d_out . d_in != 0 where a complex was expected."""


class FieldQ:
    """The rationals.  Scalars are fractions.Fraction (always reduced)."""

    char = 0
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def parse(self, s):
        return Fraction(s)

    def to_str(self, a):
        return str(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, FieldQ)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class FieldFp:
    """Prime field F_p, p an odd prime.  Scalars are ints in [0, p)."""

    def __init__(self, p):
        assert p >= 3 and _is_prime(p), "p must be an odd prime"
        self.p = p
        self.char = p
        self.name = "Fp %d" % p
        self.zero = 0
        self.one = 1

    def from_int(self, n):
        return n % self.p

    def parse(self, s):
        if "/" in s:
            num, den = s.split("/")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(s) % self.p

    def to_str(self, a):
        return str(a)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def __eq__(self, other):
        return isinstance(other, FieldFp) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


QQ = FieldQ()


class DenseMatrix:
    """Immutable-by-convention dense matrix: row-major entries over one field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries=None):
        assert rows >= 0 and cols >= 0
        if entries is None:
            entries = [field.zero] * (rows * cols)
        assert len(entries) == rows * cols
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, field, rowlist):
        rows = len(rowlist)
        cols = len(rowlist[0]) if rows else 0
        ents = []
        for r in rowlist:
            assert len(r) == cols, "rows have varying lengths"
            ents.extend(r)
        return cls(field, rows, cols, ents)

    @classmethod
    def identity(cls, field, n):
        m = cls(field, n, n)
        ents = list(m.entries)
        for i in range(n):
            ents[i * n + i] = field.one
        return cls(field, n, n, ents)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols)

    def get(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def with_entry(self, i, j, v):
        ents = list(self.entries)
        ents[i * self.cols + j] = v
        return DenseMatrix(self.field, self.rows, self.cols, ents)

    def transpose(self):
        f, R, C = self.field, self.rows, self.cols
        ents = [f.zero] * (R * C)
        for i in range(R):
            base = i * C
            for j in range(C):
                ents[j * R + i] = self.entries[base + j]
        return DenseMatrix(f, C, R, ents)

    def mul(self, other):
        assert self.field == other.field and self.cols == other.rows
        f = self.field
        out = [f.zero] * (self.rows * other.cols)
        # iterate sparsely over self's nonzeros
        for i in range(self.rows):
            base = i * self.cols
            obase = i * other.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if f.is_zero(a):
                    continue
                kbase = k * other.cols
                for j in range(other.cols):
                    b = other.entries[kbase + j]
                    if not f.is_zero(b):
                        out[obase + j] = f.add(out[obase + j], f.mul(a, b))
        return DenseMatrix(f, self.rows, other.cols, out)

    def apply(self, vec):
        """Matrix times coordinate column vector (a plain list)."""
        assert len(vec) == self.cols
        f = self.field
        out = [f.zero] * self.rows
        for i in range(self.rows):
            base = i * self.cols
            acc = f.zero
            for j, v in enumerate(vec):
                if not f.is_zero(v):
                    acc = f.add(acc, f.mul(self.entries[base + j], v))
            out[i] = acc
        return out

    def add(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        f = self.field
        return DenseMatrix(f, self.rows, self.cols,
                           [f.add(a, b) for a, b in zip(self.entries, other.entries)])

    def sub(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        f = self.field
        return DenseMatrix(f, self.rows, self.cols,
                           [f.sub(a, b) for a, b in zip(self.entries, other.entries)])

    def neg(self):
        f = self.field
        return DenseMatrix(f, self.rows, self.cols, [f.neg(a) for a in self.entries])

    def scale(self, c):
        f = self.field
        return DenseMatrix(f, self.rows, self.cols, [f.mul(c, a) for a in self.entries])

    def is_zero(self):
        f = self.field
        return all(f.is_zero(a) for a in self.entries)

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.to_str(x) for x in self.row(i))
                         for i in range(self.rows))
        return "DenseMatrix(%dx%d: %s)" % (self.rows, self.cols, body)


def _sparse_rows(m):
    f = m.field
    out = []
    for i in range(m.rows):
        base = i * m.cols
        row = {}
        for j in range(m.cols):
            v = m.entries[base + j]
            if not f.is_zero(v):
                row[j] = v
        out.append(row)
    return out


def _eliminate(field, rows, ncols, reduced):
    """Row-reduce sparse row dicts in place.

    Returns the pivot list [(row index, col index), ...] in column order.
    With reduced=True the result is the unique RREF (pivots 1, pivot
    columns cleared above and below).
    """
    pivots = []
    pr = 0
    nrows = len(rows)
    for col in range(ncols):
        # pick a pivot: favour a +/-1 entry to limit coefficient growth
        piv = -1
        for r in range(pr, nrows):
            v = rows[r].get(col)
            if v is None:
                continue
            if piv < 0:
                piv = r
            if v == field.one or v == field.neg(field.one):
                piv = r
                break
        if piv < 0:
            continue
        budget.spend()
        rows[pr], rows[piv] = rows[piv], rows[pr]
        prow = rows[pr]
        pval = prow[col]
        targets = range(nrows) if reduced else range(pr + 1, nrows)
        for r in targets:
            if r == pr:
                continue
            v = rows[r].get(col)
            if v is None:
                continue
            factor = field.div(v, pval)
            rr = rows[r]
            for c, pv in prow.items():
                acc = field.sub(rr.get(c, field.zero), field.mul(factor, pv))
                if field.is_zero(acc):
                    rr.pop(c, None)
                else:
                    rr[c] = acc
        pivots.append((pr, col))
        pr += 1
    if reduced:
        for r, col in pivots:
            pval = rows[r][col]
            if pval != field.one:
                inv = field.inv(pval)
                rows[r] = {c: field.mul(inv, v) for c, v in rows[r].items()}
    return pivots


def rank(m):
    """Rank by exact Gaussian elimination; deterministic."""
    rows = _sparse_rows(m)
    return len(_eliminate(m.field, rows, m.cols, reduced=False))


def rref(m):
    """Reduced row echelon form: (pivot column list, rows as sparse dicts)."""
    rows = _sparse_rows(m)
    pivots = _eliminate(m.field, rows, m.cols, reduced=True)
    return [c for _, c in pivots], rows


def kernel_basis(m):
    """Canonical basis of the right null space {v : m v = 0}.

    One vector per free column f, with v[f] = 1 and pivot coordinates read
    off the RREF; listed by increasing f.  This normal form is what makes
    expected values in tests reproducible.
    """
    f = m.field
    piv_cols, rows = rref(m)
    pivset = set(piv_cols)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [f.zero] * m.cols
        v[free] = f.one
        for r, pc in enumerate(piv_cols):
            w = rows[r].get(free)
            if w is not None:
                v[pc] = f.neg(w)
        basis.append(v)
    return basis


def solve(m, rhs):
    """One solution x of m x = rhs (rhs a list), or None if inconsistent.

    Free coordinates are set to zero, so the answer is canonical.
    """
    f = m.field
    assert len(rhs) == m.rows
    rows = _sparse_rows(m)
    for i, b in enumerate(rhs):
        if not f.is_zero(b):
            rows[i][m.cols] = b
    pivots = _eliminate(f, rows, m.cols + 1, reduced=True)
    x = [f.zero] * m.cols
    for r, c in pivots:
        if c == m.cols:
            return None  # a row reduced to (0 ... 0 | 1)
        x[c] = rows[r].get(m.cols, f.zero)
    return x


def column_space_contains(m, vec):
    return solve(m, vec) is not None


def from_columns(field, cols, nrows):
    """Assemble a DenseMatrix whose columns are the given vectors."""
    ents = [field.zero] * (nrows * len(cols))
    for j, v in enumerate(cols):
        assert len(v) == nrows
        for i, a in enumerate(v):
            ents[i * len(cols) + j] = a
    return DenseMatrix(field, nrows, len(cols), ents)


def cohomology_dim(d_in, d_out):
    """dim ker(d_out) - rank(d_in) for one complex node.

    Raises CompositionNonzero when d_out . d_in != 0, which always means the
    complex was assembled wrongly upstream.
    """
    assert d_in.field == d_out.field
    assert d_out.cols == d_in.rows, "degree mismatch between differentials"
    if not d_out.mul(d_in).is_zero():
        raise CompositionNonzero("d_out . d_in != 0")
    return (d_out.cols - rank(d_out)) - rank(d_in)
