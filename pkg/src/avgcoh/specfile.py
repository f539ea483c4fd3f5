"""Line-oriented text formats for algebras, jets, extension data, and
homotopy structures.

Indices in files are 1-based to match basis names like e1, e2; rationals
are written as p/q.  Sections are explicit; unknown or malformed lines
raise ParseError with the offending line number.

Algebra files:

    field Q            | field Fp 7
    dim 2
    basis e1 e2        # optional
    mul 1 1 1 1        # e_i e_j = sum_k value e_k, sparse triples
    avg 1 0            # one row per line: entry (row, col) = coeff of
    avg 0 0            #   e_row in A(e_col)
    unit 1 1           # optional
    bimodule 1         # optional block, ends with 'end'
    left 1 1 1 1       # e_i m_a = sum_b value m_b
    right 1 1 1 1
    avgm 1
    end

Jet files:     order N / mu <ord> i j k value / aop <ord> i j value
Datum files:   psi i j a value / chi i a value
Homotopy files: space <degree> <dim> / m <arity> i.. out value
                aop i out value / ar <arity> i.. out value / al ...
"""

from .algebra import AveragingAlgebra, AvBimodule
from .graded import GradedVectorSpace
from .homotopy import HomotopyAveragingStructure, plain_map
from .linalg import QQ, DenseMatrix, FieldFp


class ParseError(Exception):
    def __init__(self, lineno, message):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _parse_scalar(field, tok, lineno):
    try:
        return field.parse(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, "bad scalar %r" % tok)


def _parse_index(tok, bound, lineno, what):
    try:
        idx = int(tok)
    except ValueError:
        raise ParseError(lineno, "bad %s index %r" % (what, tok))
    if not 1 <= idx <= bound:
        raise ParseError(lineno, "%s index %d out of range 1..%d" %
                         (what, idx, bound))
    return idx - 1


def parse_algebra(text):
    """Returns (AveragingAlgebra, AvBimodule or None)."""
    field = None
    dim = None
    basis = None
    mul = None
    seen = set()
    avg_rows = []
    unit = None
    bimod = None
    in_bimod = False
    for lineno, toks in _lines(text):
        head = toks[0]
        if in_bimod:
            if head == "end":
                in_bimod = False
            elif head in ("left", "right"):
                if len(toks) != 5:
                    raise ParseError(lineno, "%s needs i a b value" % head)
                i = _parse_index(toks[1], dim, lineno, "algebra")
                a = _parse_index(toks[2], bimod["dim"], lineno, "module")
                b = _parse_index(toks[3], bimod["dim"], lineno, "module")
                v = _parse_scalar(field, toks[4], lineno)
                key = (head, i, a, b)
                if key in bimod["seen"]:
                    raise ParseError(lineno, "duplicate %s entry" % head)
                bimod["seen"].add(key)
                bimod[head][i][b][a] = v
            elif head == "avgm":
                if len(toks) != bimod["dim"] + 1:
                    raise ParseError(lineno, "avgm row needs %d values" %
                                     bimod["dim"])
                bimod["avgm"].append([_parse_scalar(field, t, lineno)
                                      for t in toks[1:]])
            else:
                raise ParseError(lineno, "unknown bimodule line %r" % head)
            continue
        if head == "field":
            if len(toks) == 2 and toks[1] == "Q":
                field = QQ
            elif len(toks) == 3 and toks[1] == "Fp":
                try:
                    field = FieldFp(int(toks[2]))
                except (ValueError, AssertionError):
                    raise ParseError(lineno, "bad prime %r" % toks[2])
            else:
                raise ParseError(lineno, "field must be 'Q' or 'Fp <p>'")
        elif head == "dim":
            if field is None:
                raise ParseError(lineno, "field must come before dim")
            try:
                dim = int(toks[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, "bad dimension")
            if dim < 0:
                raise ParseError(lineno, "dimension must be >= 0")
            mul = [[[field.zero] * dim for _ in range(dim)]
                   for _ in range(dim)]
        elif head == "basis":
            basis = toks[1:]
        elif head == "mul":
            if mul is None:
                raise ParseError(lineno, "dim must come before mul")
            if len(toks) != 5:
                raise ParseError(lineno, "mul needs i j k value")
            i = _parse_index(toks[1], dim, lineno, "basis")
            j = _parse_index(toks[2], dim, lineno, "basis")
            k = _parse_index(toks[3], dim, lineno, "basis")
            if (i, j, k) in seen:
                raise ParseError(lineno, "duplicate mul entry (%d,%d,%d)" %
                                 (i + 1, j + 1, k + 1))
            seen.add((i, j, k))
            mul[i][j][k] = _parse_scalar(field, toks[4], lineno)
        elif head == "avg":
            if dim is None:
                raise ParseError(lineno, "dim must come before avg")
            if len(toks) != dim + 1:
                raise ParseError(lineno, "avg row needs %d values" % dim)
            avg_rows.append([_parse_scalar(field, t, lineno) for t in toks[1:]])
        elif head == "unit":
            if dim is None:
                raise ParseError(lineno, "dim must come before unit")
            if len(toks) != dim + 1:
                raise ParseError(lineno, "unit needs %d values" % dim)
            unit = [_parse_scalar(field, t, lineno) for t in toks[1:]]
        elif head == "bimodule":
            if dim is None:
                raise ParseError(lineno, "dim must come before bimodule")
            try:
                mdim = int(toks[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, "bimodule needs a dimension")
            bimod = {"dim": mdim, "seen": set(),
                     "left": [[[field.zero] * mdim for _ in range(mdim)]
                              for _ in range(dim)],
                     "right": [[[field.zero] * mdim for _ in range(mdim)]
                               for _ in range(dim)],
                     "avgm": []}
            in_bimod = True
        else:
            raise ParseError(lineno, "unknown line %r" % head)
    if field is None or dim is None:
        raise ParseError(0, "missing field or dim")
    if len(avg_rows) != dim:
        raise ParseError(0, "expected %d avg rows, got %d" %
                         (dim, len(avg_rows)))
    if basis is not None and len(basis) != dim:
        raise ParseError(0, "basis names do not match dim")
    avg = DenseMatrix.from_rows(field, avg_rows) if dim else \
        DenseMatrix(field, 0, 0)
    alg = AveragingAlgebra(field, dim, mul, avg, unit=unit)
    module = None
    if bimod is not None:
        if len(bimod["avgm"]) != bimod["dim"]:
            raise ParseError(0, "expected %d avgm rows" % bimod["dim"])
        mdim = bimod["dim"]
        left = [DenseMatrix.from_rows(field, bimod["left"][i]) if mdim else
                DenseMatrix(field, 0, 0) for i in range(dim)]
        right = [DenseMatrix.from_rows(field, bimod["right"][i]) if mdim else
                 DenseMatrix(field, 0, 0) for i in range(dim)]
        avgm = DenseMatrix.from_rows(field, bimod["avgm"]) if mdim else \
            DenseMatrix(field, 0, 0)
        module = AvBimodule(alg, mdim, left, right, avgm)
    return alg, module


def serialize_algebra(alg, module=None, basis=None, header=None):
    f = alg.field
    out = []
    if header:
        out.append("# " + header)
    out.append("field %s" % f.name)
    out.append("dim %d" % alg.dim)
    if basis:
        out.append("basis " + " ".join(basis))
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                v = alg.mul[i][j][k]
                if not f.is_zero(v):
                    out.append("mul %d %d %d %s" %
                               (i + 1, j + 1, k + 1, f.to_str(v)))
    for r in range(alg.dim):
        out.append("avg " + " ".join(f.to_str(x) for x in alg.avg.row(r)))
    if alg.unit is not None:
        out.append("unit " + " ".join(f.to_str(x) for x in alg.unit))
    if module is not None:
        out.append("bimodule %d" % module.dim)
        for tag, mats in (("left", module.left), ("right", module.right)):
            for i in range(alg.dim):
                for a in range(module.dim):
                    for b in range(module.dim):
                        v = mats[i].get(b, a)
                        if not f.is_zero(v):
                            out.append("%s %d %d %d %s" %
                                       (tag, i + 1, a + 1, b + 1, f.to_str(v)))
        for r in range(module.dim):
            out.append("avgm " + " ".join(f.to_str(x)
                                          for x in module.avg_m.row(r)))
        out.append("end")
    return "\n".join(out) + "\n"


def parse_jet(text, alg):
    """Returns (mu_list, a_list) coefficient arrays for a DeformationJet."""
    from .deformations import DeformationJet, zero_mu_tensor
    f = alg.field
    dim = alg.dim
    order = None
    mus = None
    ops = None
    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "order":
            try:
                order = int(toks[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, "bad order")
            if order < 0:
                raise ParseError(lineno, "order must be >= 0")
            mus = [zero_mu_tensor(alg) for _ in range(order + 1)]
            ops = [[[f.zero] * dim for _ in range(dim)]
                   for _ in range(order + 1)]
        elif head == "mu":
            if order is None:
                raise ParseError(lineno, "order must come first")
            if len(toks) != 6:
                raise ParseError(lineno, "mu needs ord i j k value")
            o = int(toks[1])
            if not 1 <= o <= order:
                raise ParseError(lineno, "mu order out of range")
            i = _parse_index(toks[2], dim, lineno, "basis")
            j = _parse_index(toks[3], dim, lineno, "basis")
            k = _parse_index(toks[4], dim, lineno, "basis")
            mus[o][i][j][k] = _parse_scalar(f, toks[5], lineno)
        elif head == "aop":
            if order is None:
                raise ParseError(lineno, "order must come first")
            if len(toks) != 5:
                raise ParseError(lineno, "aop needs ord i j value")
            o = int(toks[1])
            if not 1 <= o <= order:
                raise ParseError(lineno, "aop order out of range")
            i = _parse_index(toks[2], dim, lineno, "basis")
            j = _parse_index(toks[3], dim, lineno, "basis")
            ops[o][i][j] = _parse_scalar(f, toks[4], lineno)
        else:
            raise ParseError(lineno, "unknown jet line %r" % head)
    if order is None:
        raise ParseError(0, "missing order")
    mus[0] = alg.mul
    a_list = [alg.avg] + [DenseMatrix.from_rows(f, ops[o]) if dim else
                          DenseMatrix(f, 0, 0) for o in range(1, order + 1)]
    return DeformationJet(alg, mus, a_list)


def serialize_jet(jet):
    f = jet.base.field
    dim = jet.base.dim
    out = ["order %d" % jet.order]
    for o in range(1, jet.order + 1):
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    v = jet.mu_list[o][i][j][k]
                    if not f.is_zero(v):
                        out.append("mu %d %d %d %d %s" %
                                   (o, i + 1, j + 1, k + 1, f.to_str(v)))
        for i in range(dim):
            for j in range(dim):
                v = jet.a_list[o].get(i, j)
                if not f.is_zero(v):
                    out.append("aop %d %d %d %s" % (o, i + 1, j + 1, f.to_str(v)))
    return "\n".join(out) + "\n"


def parse_datum(text, alg, module):
    from .extensions import ExtensionDatum
    f = alg.field
    d = ExtensionDatum.zero(alg, module)
    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "psi":
            if len(toks) != 5:
                raise ParseError(lineno, "psi needs i j a value")
            i = _parse_index(toks[1], alg.dim, lineno, "basis")
            j = _parse_index(toks[2], alg.dim, lineno, "basis")
            a = _parse_index(toks[3], module.dim, lineno, "module")
            d.psi[i][j][a] = _parse_scalar(f, toks[4], lineno)
        elif head == "chi":
            if len(toks) != 4:
                raise ParseError(lineno, "chi needs i a value")
            i = _parse_index(toks[1], alg.dim, lineno, "basis")
            a = _parse_index(toks[2], module.dim, lineno, "module")
            d.chi[i][a] = _parse_scalar(f, toks[3], lineno)
        else:
            raise ParseError(lineno, "unknown datum line %r" % head)
    return d


def serialize_datum(d, alg, module):
    f = alg.field
    out = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            for a in range(module.dim):
                v = d.psi[i][j][a]
                if not f.is_zero(v):
                    out.append("psi %d %d %d %s" %
                               (i + 1, j + 1, a + 1, f.to_str(v)))
    for i in range(alg.dim):
        for a in range(module.dim):
            v = d.chi[i][a]
            if not f.is_zero(v):
                out.append("chi %d %d %s" % (i + 1, a + 1, f.to_str(v)))
    return "\n".join(out) + "\n"


def parse_homotopy(text):
    """Graded space plus per-arity coefficient tables with degree checks."""
    degrees = []
    space = None
    fams = {"m": {}, "ar": {}, "al": {}}
    a1_entries = []
    entries = []
    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "space":
            if space is not None:
                raise ParseError(lineno, "space lines must precede maps")
            if len(toks) != 3:
                raise ParseError(lineno, "space needs degree and size")
            try:
                deg, size = int(toks[1]), int(toks[2])
            except ValueError:
                raise ParseError(lineno, "bad space line")
            if size < 0:
                raise ParseError(lineno, "size must be >= 0")
            degrees.extend([deg] * size)
        elif head in ("m", "ar", "al"):
            if space is None:
                space = GradedVectorSpace(degrees)
            if len(toks) < 5:
                raise ParseError(lineno, "%s needs arity, inputs, out, value" %
                                 head)
            try:
                arity = int(toks[1])
            except ValueError:
                raise ParseError(lineno, "bad arity")
            if arity < 1 or len(toks) != arity + 4:
                raise ParseError(lineno, "expected %d inputs" % arity)
            if head in ("ar", "al") and arity < 2:
                raise ParseError(lineno, "%s families start at arity 2" % head)
            tup = tuple(_parse_index(t, space.dim, lineno, "basis")
                        for t in toks[2:2 + arity])
            out = _parse_index(toks[2 + arity], space.dim, lineno, "basis")
            val = _parse_scalar(QQ, toks[3 + arity], lineno)
            entries.append((lineno, head, arity, tup, out, val))
        elif head == "aop":
            if space is None:
                space = GradedVectorSpace(degrees)
            if len(toks) != 4:
                raise ParseError(lineno, "aop needs in out value")
            i = _parse_index(toks[1], space.dim, lineno, "basis")
            o = _parse_index(toks[2], space.dim, lineno, "basis")
            a1_entries.append((lineno, i, o, _parse_scalar(QQ, toks[3], lineno)))
        else:
            raise ParseError(lineno, "unknown homotopy line %r" % head)
    if space is None:
        space = GradedVectorSpace(degrees)
    a1 = None
    if a1_entries:
        a1 = plain_map(space, 1, 0)
        for lineno, i, o, v in a1_entries:
            if not a1.entry_allowed((i,), o):
                raise ParseError(lineno, "operator entry violates degree 0")
            a1.set_entry((i,), o, v)
    for lineno, head, arity, tup, out, val in entries:
        deg = arity - 2 if head == "m" else arity - 1
        fam = fams[head]
        if arity not in fam:
            fam[arity] = plain_map(space, arity, deg)
        if not fam[arity].entry_allowed(tup, out):
            raise ParseError(lineno, "entry violates the declared degree %d" % deg)
        fam[arity].set_entry(tup, out, val)
    return HomotopyAveragingStructure(space, fams["m"], a1,
                                      fams["ar"], fams["al"])


def serialize_homotopy(h):
    out = []
    space = h.space
    prev = None
    # emit the grading as runs of equal degree, in basis order
    runs = []
    for d in space.degrees:
        if prev is None or d != prev:
            runs.append([d, 0])
        runs[-1][1] += 1
        prev = d
    for d, size in runs:
        out.append("space %d %d" % (d, size))
    for arity, gm in sorted(h.m.items()):
        for tup, o, v in sorted(gm.entries()):
            out.append("m %d %s %d %s" % (arity,
                                          " ".join(str(i + 1) for i in tup),
                                          o + 1, QQ.to_str(v)))
    if h.a1 is not None:
        for tup, o, v in sorted(h.a1.entries()):
            out.append("aop %d %d %s" % (tup[0] + 1, o + 1, QQ.to_str(v)))
    for tag, fam in (("ar", h.ar), ("al", h.al)):
        for arity, gm in sorted(fam.items()):
            for tup, o, v in sorted(gm.entries()):
                out.append("%s %d %s %d %s" %
                           (tag, arity, " ".join(str(i + 1) for i in tup),
                            o + 1, QQ.to_str(v)))
    return "\n".join(out) + "\n"
