"""Command-line front end: avgcoh verify|cohomology|deform|extend|linfty|homotopy.

Exit codes: 0 every check passed, 1 a check failed, 2 input/usage/resource
error.  Output is deterministic: the same inputs produce the same bytes.
"""

import argparse
import os
import sys

from . import budget
from .algebra import regular_bimodule, verify_av_bimodule, \
    verify_averaging_algebra
from .complexes import (assemble_ava_complex, assemble_avo_complex,
                        assemble_hochschild_complex, les_check)
from .deformations import (DeformationContext, NotADeformationAtOrder1,
                           infinitesimal_is_cocycle, is_deformation,
                           residuals_vanish, rigidity_certificate,
                           triviality_search)
from .extensions import (ExtensionContext, NotACocycle, classify,
                         extension_from_cocycle, extensions_isomorphic)
from .graded import GradedVectorSpace
from .linalg import QQ
from .linfty import (CharacteristicError, build_brackets,
                     linfty_identity_residual, mc_from_averaging, mc_residual,
                     twist, twisted_l1_ava_matrix)
from .homotopy import (all_identity_residuals_vanish, chain_homotopy_report,
                       homotopy_identity_residual, identities_agree_with_mc)
from .report import Report
from .specfile import ParseError, parse_algebra, parse_datum, parse_homotopy, \
    parse_jet

MAX_COCHAIN_COORDS = 500000


class CapTooLarge(Exception):
    pass


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(0, "cannot read %s: %s" % (path, exc))


def _load_algebra(path):
    return parse_algebra(_read(path))


def _module_for(alg, module):
    return module if module is not None else regular_bimodule(alg)


def _guard_complex_size(alg, module, cap):
    coords = sum(2 * (alg.dim ** n) * module.dim for n in range(cap + 1))
    if coords > MAX_COCHAIN_COORDS or cap > 8:
        raise CapTooLarge("degree cap %d on dimension %d is out of budget" %
                          (cap, alg.dim))


def cmd_verify(args):
    alg, module = _load_algebra(args.path)
    rep = verify_averaging_algebra(alg)
    if module is not None:
        sub = verify_av_bimodule(module)
        rep.extend(sub, prefix="bimodule.")
    rep.note("checked", "averaging algebra axioms" +
             (" and bimodule axioms" if module is not None else ""))
    print(rep.render(), end="")
    return 0 if rep.passed else 1


def cmd_cohomology(args):
    alg, module = _load_algebra(args.path)
    module = _module_for(alg, module)
    maxdeg = args.max_degree
    if maxdeg < 0:
        raise CapTooLarge("max degree must be >= 0")
    cap = max(2, maxdeg + 1)
    if args.complex == "ava":
        cap = max(3, cap)
    _guard_complex_size(alg, module, cap + 1)
    if args.complex == "hochschild":
        asm = assemble_hochschild_complex(alg, module, cap)
    elif args.complex == "avo":
        asm = assemble_avo_complex(alg, module, cap)
    else:
        asm = assemble_ava_complex(alg, module, cap)
    rep = Report("cohomology (%s)" % args.complex)
    rep.extend(asm.summary_report(), prefix="complex.")
    for d in range(maxdeg + 1):
        rep.note("H^%d" % d, str(asm.cohomology_dim_at(d)))
    if args.complex == "ava":
        rep.extend(les_check(alg, module, cap=max(3, cap)), prefix="les.")
    print(rep.render(), end="")
    return 0 if rep.passed else 1


def cmd_deform(args):
    alg, _ = _load_algebra(args.path)
    jet = parse_jet(_read(args.jet), alg)
    order = jet.order if args.order is None else args.order
    if order > jet.order:
        raise ParseError(0, "requested order exceeds the jet's order")
    rep = Report("deformation of the file's algebra")
    for n in range(order + 1):
        ok = residuals_vanish(jet, n)
        rep.add("residuals-order-%d" % n, ok,
                "" if ok else "nonzero residual at order %d" % n)
    if jet.order >= 1:
        try:
            ok, _pair = infinitesimal_is_cocycle(jet)
            rep.add("order-1-cocycle", ok)
        except NotADeformationAtOrder1:
            rep.fail("order-1-cocycle", "jet does not deform at order 1")
    if args.search_trivial:
        if is_deformation(jet, order):
            res = triviality_search(jet, order)
            if res.trivial:
                phi1 = res.iso.phi_list[1] if res.iso.order >= 1 else None
                detail = "trivial to order %d" % order
                if phi1 is not None:
                    detail += "; phi1 = [" + "; ".join(
                        " ".join(alg.field.to_str(x) for x in phi1.row(i))
                        for i in range(phi1.rows)) + "]"
                rep.note("triviality", detail)
            else:
                rep.note("triviality",
                         "obstructed at order %d" % res.obstruction_order)
        else:
            rep.fail("triviality", "not a deformation to order %d" % order)
    rep.extend(rigidity_certificate(alg), prefix="rigidity.")
    print(rep.render(), end="")
    return 0 if rep.passed else 1


def cmd_extend(args):
    alg, module = _load_algebra(args.path)
    module = _module_for(alg, module)
    ctx = ExtensionContext(alg, module)
    rep = Report("abelian extensions")
    if args.classify:
        dim, reps = classify(alg, module, ctx)
        rep.note("h2", str(dim))
        rep.note("representatives", str(len(reps)))
    if args.from_cocycle:
        datum = parse_datum(_read(args.from_cocycle), alg, module)
        is_coc = ctx.is_cocycle(datum)
        ext = extension_from_cocycle(alg, module, datum)
        ver = verify_averaging_algebra(ext)
        rep.add("datum-is-cocycle", is_coc)
        rep.extend(ver, prefix="extension.")
        rep.add("validity-matches-cocycle", is_coc == ver.passed)
    if args.compare:
        d1 = parse_datum(_read(args.compare[0]), alg, module)
        d2 = parse_datum(_read(args.compare[1]), alg, module)
        gamma = extensions_isomorphic(d1, d2, alg, module, ctx)
        if gamma is None:
            rep.note("compare", "non-isomorphic (distinct classes)")
        else:
            rep.note("compare", "isomorphic; gamma = [" + "; ".join(
                " ".join(alg.field.to_str(x) for x in gamma.row(i))
                for i in range(gamma.rows)) + "]")
    print(rep.render(), end="")
    return 0 if rep.passed else 1


IDENTITY_BATTERY = [
    [("hoch", 1, 0), ("hoch", 1, -1)],
    [("hoch", 2, -1), ("hoch", 1, 0)],
    [("hoch", 1, 0), ("hoch", 1, -1), ("hoch", 1, 1)],
    [("hoch", 2, -1), ("hoch", 1, 0), ("op", 1, -1)],
    [("hoch", 2, -1), ("hoch", 1, 0), ("op", 0, 0)],
    [("hoch", 0, 1), ("hoch", 2, -1), ("op", 1, 0)],
    [("hoch", 2, -1), ("hoch", 1, 0), ("op", 1, -1), ("op", 1, 0)],
    [("hoch", 2, -1), ("hoch", 1, 0), ("opr", 2, -1), ("op", 1, -1)],
    [("hoch", 2, -1), ("hoch", 1, 0), ("opl", 2, -1), ("op", 0, 0)],
    [("hoch", 3, -2), ("hoch", 1, 0), ("op", 1, -1), ("op", 0, 0)],
]


def _battery_elements(space, shapes, seed):
    import random
    from itertools import product
    from .linfty import CAvAElement, hoch_map, op_map
    rng = random.Random(seed)
    els = []
    for block, arity, degree in shapes:
        gm = hoch_map(space, arity, degree) if block == "hoch" else \
            op_map(space, arity, degree)
        found = False
        for tup in product(range(space.dim), repeat=arity):
            for out in range(space.dim):
                if gm.entry_allowed(tup, out):
                    v = rng.randint(-2, 2)
                    if not found and v == 0:
                        v = 1
                    if v:
                        gm.set_entry(tup, out, v)
                        found = True
        if not found:
            return None
        els.append(CAvAElement(space).add_part(block, gm))
    return els


def _parse_graded_space(spec):
    dims = {}
    for part in spec.split(","):
        deg, size = part.split(":")
        dims[int(deg)] = int(size)
    return GradedVectorSpace.from_dims(dims)


def cmd_linfty(args):
    rep = Report("bracket system checks")
    if args.graded_space:
        space = _parse_graded_space(args.graded_space)
        alg = None
    else:
        if not args.path:
            raise ParseError(0, "need an algebra file or --graded-space")
        alg, _ = _load_algebra(args.path)
        if alg.field != QQ:
            raise CharacteristicError("bracket calculus requires field Q")
        space = None
    cap = args.arity_cap
    if cap > 5:
        raise CapTooLarge("arity cap %d is out of budget" % cap)
    if args.check_identities:
        target = space or GradedVectorSpace([0] * alg.dim)
        if target.dim > 3:
            raise CapTooLarge("identity battery needs total dim <= 3")
        brackets = build_brackets(target, max(cap, 4))
        ran = 0
        for idx, shapes in enumerate(IDENTITY_BATTERY):
            if len(shapes) > cap:
                continue
            els = _battery_elements(target, shapes, seed=idx + 1)
            if els is None:
                continue
            res = linfty_identity_residual(brackets, els)
            rep.add("identity-%d" % idx, res.is_zero(),
                    "blocks " + ",".join(b for b, _, _ in shapes))
            ran += 1
        rep.note("identities-run", str(ran))
    if args.mc:
        if alg is None:
            raise ParseError(0, "--mc needs an algebra file")
        sp, alpha = mc_from_averaging(alg)
        brackets = build_brackets(sp, max(cap, 3))
        res = mc_residual(brackets, alpha)
        if res.is_zero():
            rep.add("mc-residual", True, "0")
        else:
            blocks = res.nonzero_blocks()
            detail = "nonzero blocks: %s" % ",".join(blocks)
            if "opr" in blocks:
                detail += "; A(x A(y)) comparison fails"
            if "opl" in blocks:
                detail += "; A(A(x) y) comparison fails"
            if "hoch" in blocks:
                detail += "; associativity fails"
            rep.add("mc-residual", False, detail)
    if args.twist_compare:
        if alg is None:
            raise ParseError(0, "--twist-compare needs an algebra file")
        module = regular_bimodule(alg)
        maxdeg = args.max_degree
        _guard_complex_size(alg, module, maxdeg + 2)
        sp, alpha = mc_from_averaging(alg)
        brackets = build_brackets(sp, max(cap, maxdeg + 2))
        tw = twist(brackets, alpha)
        ava = assemble_ava_complex(alg, module, maxdeg + 1)
        for d in range(maxdeg + 1):
            same = twisted_l1_ava_matrix(tw, module, d) == ava.diffs[d]
            rep.add("twist-degree-%d" % d, same,
                    "" if same else "entrywise mismatch")
    print(rep.render(), end="")
    return 0 if rep.passed else 1


def cmd_homotopy(args):
    h = parse_homotopy(_read(args.path))
    cap = args.arity_cap
    if cap > 4 or h.space.dim > 4:
        raise CapTooLarge("arity cap %d / dimension %d out of budget" %
                          (cap, h.space.dim))
    rep = Report("homotopy averaging checks (arity cap %d)" % cap)
    for n in range(1, cap + 1):
        for which in ("i", "ii", "iii"):
            ok = homotopy_identity_residual(h, n, which).is_zero()
            rep.add("identity-%s[%d]" % (which, n), ok,
                    "" if ok else "nonzero residual")
    agrees = identities_agree_with_mc(h, cap)
    rep.add("definitions-agree", agrees)
    rep.extend(chain_homotopy_report(h), prefix="homotopy.")
    print(rep.render(), end="")
    return 0 if rep.passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="avgcoh",
        description="Exact checks for averaging algebras: axioms, cochain "
                    "complexes, deformations, extensions, bracket systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="axiom checks for an algebra file")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cohomology", help="cohomology dimension table")
    p.add_argument("path")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--complex", choices=("avo", "ava", "hochschild"),
                   default="ava")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("deform", help="residuals and triviality of a jet")
    p.add_argument("path")
    p.add_argument("jet")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--search-trivial", action="store_true")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("extend", help="abelian extension tools")
    p.add_argument("path")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--from-cocycle", metavar="DATUM")
    p.add_argument("--compare", nargs=2, metavar=("D1", "D2"))
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("linfty", help="bracket-system checks")
    p.add_argument("path", nargs="?")
    p.add_argument("--graded-space", metavar="SPEC",
                   help="e.g. 0:2 or 0:1,1:1")
    p.add_argument("--arity-cap", type=int, default=4)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--mc", action="store_true")
    p.add_argument("--twist-compare", action="store_true")
    p.add_argument("--check-identities", action="store_true")
    p.set_defaults(func=cmd_linfty)

    p = sub.add_parser("homotopy", help="homotopy averaging checks")
    p.add_argument("path")
    p.add_argument("--arity-cap", type=int, default=3)
    p.set_defaults(func=cmd_homotopy)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    env = os.environ.get("AVGCOH_STEP_BUDGET")
    if env:
        try:
            budget.set_limit(int(env))
        except ValueError:
            print("error: AVGCOH_STEP_BUDGET must be an integer",
                  file=sys.stderr)
            return 2
    else:
        budget.set_limit(None)
    try:
        return args.func(args)
    except (ParseError, CapTooLarge, CharacteristicError, NotACocycle,
            budget.BudgetExceeded) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
