"""Command line front end: ``veech compute|member|staples|segments|domain``."""

from __future__ import annotations

import argparse
import json
import logging
import random
import re
import sys

from . import io as vio
from .driver import compute
from .exactnum import QQ, field_from_expression
from .hyperbolic import (
    Unresolved, area, dirichlet_domain, side_pairings_and_signature,
    stopping_test,
)
from .mat2 import fmt, parse as parse_matrix, to_json as mat_json
from .membership import SurfaceData
from .surface import SurfaceError
from .svg import ball_radius, write_svg

log = logging.getLogger("veech")

EXIT_TERMINATED = 0
EXIT_ERROR = 1
EXIT_NORM_BOUND = 2
EXIT_NOT_MEMBER = 3


def _surface(args):
    return vio.load_surface(args.surface, a=getattr(args, "a", None))


def _emit(args, obj):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if getattr(args, "emit_json", None):
        with open(args.emit_json, "w") as fh:
            fh.write(text + "\n")
    elif not args.quiet:
        print(text)


def cmd_compute(args):
    surface = _surface(args)
    field = surface.field
    max_norm = field(args.max_norm)
    if max_norm * max_norm < 2:
        raise ValueError("--max-norm must be at least sqrt 2")
    say = (lambda msg: None) if args.quiet else (lambda msg: print(msg, file=sys.stderr))
    result = compute(surface, max_norm * max_norm, no_shift=args.no_shift, shift_n=args.shift_n,
                     bits=args.precision_bits, max_bits=args.max_bits, progress=say)
    if args.emit_json:
        vio.write_json(vio.result_to_json(result, surface), args.emit_json)
    if args.emit_svg:
        write_svg(result.domain, args.emit_svg, a2=result.a2 if result.domain is not None else None,
                  title="%s %s" % (surface.name or "surface", result.status))
    if not args.quiet:
        print("status: %s" % result.status)
        print("elements: %d (up to a^2 = %s)" % (len(result.elements), result.a2))
        print("contains -I: %s" % result.contains_minus_identity)
        if result.shift is not None:
            print("shift: %s (n = %d)" % (fmt(result.shift), result.shift_n))
        if result.terminated:
            print("signature: %s" % result.signature)
            print("area: %.12f" % float(result.area.mid))
            for g in result.generators:
                print("generator: %s" % fmt(g))
    return EXIT_TERMINATED if result.terminated else EXIT_NORM_BOUND


def _matrix_text(args):
    """Matrix text with the surface parameter ``a`` substituted, if there is one."""
    text = args.matrix_opt or args.matrix
    if text is None:
        raise ValueError("member needs a matrix, e.g. --matrix '1,0;2,1'")
    a = args.a or ("1+sqrt3" if args.surface.startswith("mcmullen") else None)
    if a is None:
        return text
    return re.sub(r"\ba\b", "(%s)" % a, text)


def cmd_member(args):
    surface = _surface(args)
    A = parse_matrix(_matrix_text(args), surface.field)
    data = SurfaceData(surface)
    t = data.membership_witness(A)
    out = {"matrix": mat_json(A), "member": t is not None,
           "witness": None if t is None else {"perm": list(t.perm), "rot": list(t.rot)}}
    if not args.quiet:
        print(json.dumps(out, sort_keys=True))
    return EXIT_TERMINATED if t is not None else EXIT_NOT_MEMBER


def cmd_staples(args):
    surface = _surface(args)
    data = SurfaceData(surface, include_degenerate=args.degenerate)
    out = {
        "ell2": data.ell2.to_json(),
        "ell2_text": str(data.ell2),
        "staples": [{"s": st.s.to_json(), "s_rev": st.s_rev.to_json(), "edge": st.edge}
                    for st in data.staples],
        "degenerate": len(data.degenerate),
    }
    _emit(args, out)
    return 0


def cmd_segments(args):
    surface = _surface(args)
    data = SurfaceData(surface)
    r = surface.field(args.radius)
    index = data.ensure_radius2(r * r)
    out = {"radius2": index.radius2.to_json(), "count": len(index), "segments": index.to_json()}
    _emit(args, out)
    return 0


def _domain_matrices(args):
    if args.file:
        return vio.read_matrices(args.file)
    field = field_from_expression(*[e for m in args.matrix for e in m.replace(";", ",").split(",")])
    return [parse_matrix(m, field) for m in args.matrix]


def cmd_domain(args):
    mats = _domain_matrices(args)
    field = mats[0][0].field if mats else QQ
    poly = dirichlet_domain(mats, field=field) if mats else None
    out = {"matrices": [mat_json(A) for A in mats]}
    if poly is not None:
        out["domain"] = vio.polygon_to_json(poly)
        if poly.is_finite():
            out["area"] = float(area(poly, args.precision_bits).mid)
            try:
                paired = side_pairings_and_signature(poly, args.precision_bits)
                out["domain"] = vio.domain_to_json(paired)
                out["signature"] = str(paired.signature)
                poly_or_paired = paired
            except Unresolved as exc:
                out["unpaired"] = str(exc)
                poly_or_paired = poly
        else:
            poly_or_paired = poly
        if args.a2 is not None:
            cert = stopping_test(poly, field(args.a2), bits=args.precision_bits)
            out["stopping_test"] = cert.verdict
    else:
        poly_or_paired = None
    if args.sample:
        out["sample"] = _sample_ball(poly, args.a2 or "4", args.sample, args.seed)
    _emit(args, out)
    if args.emit_svg:
        write_svg(poly_or_paired, args.emit_svg, a2=field(args.a2) if args.a2 else None)
    return 0


def _sample_ball(poly, a2, n, seed):
    """Fraction of seeded random points of B(i, log nu(a)) that lie in the domain."""
    rng = random.Random(seed)
    rho = ball_radius(QQ(a2))
    inside = 0
    for _ in range(n):
        while True:
            x, y = rng.uniform(-rho, rho), rng.uniform(-rho, rho)
            if x * x + y * y <= rho * rho:
                break
        if poly is None or poly.contains((x, y)):
            inside += 1
    return {"points": n, "inside": inside, "seed": seed}


def build_parser():
    p = argparse.ArgumentParser(prog="veech", description="Veech groups of translation surfaces.")
    p.add_argument("--precision-bits", type=int, default=64, help="starting interval precision")
    p.add_argument("--seed", type=int, default=0, help="seed for sampling checks")
    p.add_argument("--quiet", action="store_true", help="suppress progress and summaries")
    sub = p.add_subparsers(dest="command", required=True)

    def surface_arg(sp):
        sp.add_argument("surface", help="catalog name (square-torus, hex-torus, L, L(a,b), "
                                        "mcmullen-genus2) or a surface JSON file")
        sp.add_argument("--a", help="parameter for mcmullen-genus2, e.g. '1+sqrt3'")

    c = sub.add_parser("compute", help="compute the Veech group up to a norm bound")
    surface_arg(c)
    c.add_argument("--max-norm", default="16", help="Frobenius norm bound (not squared)")
    c.add_argument("--emit-json", help="write the result document here")
    c.add_argument("--emit-svg", help="write the domain picture here")
    c.add_argument("--no-shift", action="store_true", help="never conjugate; skip the stopping test")
    c.add_argument("--shift-n", type=int, help="force the shift [[1,0],[1/n,1]]")
    c.add_argument("--max-bits", type=int, default=1024)
    c.set_defaults(func=cmd_compute)

    m = sub.add_parser("member", help="test one matrix for membership")
    surface_arg(m)
    m.add_argument("matrix", nargs="?", help="'a,b;c,d' with entries in the surface field; "
                                             "the name a stands for the surface parameter")
    m.add_argument("--matrix", dest="matrix_opt", help="same as the positional matrix")
    m.set_defaults(func=cmd_member)

    s = sub.add_parser("staples", help="list the Voronoi staples")
    surface_arg(s)
    s.add_argument("--degenerate", action="store_true", help="include zero-length Voronoi edges")
    s.add_argument("--emit-json")
    s.set_defaults(func=cmd_staples)

    g = sub.add_parser("segments", help="list marked segments up to a length")
    surface_arg(g)
    g.add_argument("--radius", default="2", help="length bound (not squared)")
    g.add_argument("--emit-json")
    g.set_defaults(func=cmd_segments)

    d = sub.add_parser("domain", help="Dirichlet domain of an explicit matrix list")
    d.add_argument("matrix", nargs="*", help="matrices as 'a,b;c,d'")
    d.add_argument("--file", help="JSON matrix list instead of arguments")
    d.add_argument("--a2", help="run the stopping test at this squared norm")
    d.add_argument("--sample", type=int, default=0, help="sample this many ball points")
    d.add_argument("--emit-json")
    d.add_argument("--emit-svg")
    d.set_defaults(func=cmd_domain)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s")
    try:
        return args.func(args)
    except (SurfaceError, ValueError, OSError, KeyError, Unresolved) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
