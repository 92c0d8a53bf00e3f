"""Command-line front end.

Commands: walls | pell | numsol | classify | intervals | act | mobius |
wmax | verify.  Results print as JSON on stdout; rationals are strings
"p/q".  Exit codes: 0 success, 2 precondition/input errors, 3 internal
invariant violations (bugs).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import InvariantViolation, PreconditionError
from .jsonio import (
    chamber_record,
    frac_str,
    gmatrix_record,
    parse_frac,
    parse_gmatrix_text,
    parse_qnc,
    qnc_str,
    vector_str,
    wall_record,
    wmax_record,
)
from .lattice import Context, MukaiVector
from .charge import StabilityPoint
from . import pell as pell_mod
from . import walls as walls_mod
from . import fmgroup
from . import oracle as oracle_mod
from . import svg as svg_mod


def _parse_window(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("window must be smin:smax:tmax")
    s_min, s_max, t_max = (Fraction(p) for p in parts)
    if s_max <= s_min or t_max <= 0:
        raise ValueError("window must have positive extent")
    return s_min, s_max, t_max


def _parse_m_range(text: str) -> range:
    lo, hi = text.split("..")
    return range(int(lo), int(hi) + 1)


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _square_case_walls(n: int, ell: int, ctx: Context) -> list:
    """Finite enumeration when sqrt(l*n) is an integer: all walls in s < 0
    cross the rational abscissa -sqrt(l/n); mirror for s > 0; plus the
    t-axis when it is a wall."""
    v = MukaiVector(1, 0, -ell)
    import math

    s0 = -Fraction(math.isqrt(ell * n), n)
    left = walls_mod.enumerate_walls_on_line(v, s0, ctx)
    mirrored = [walls_mod._mirror_wall(w) for w in left]
    axis = walls_mod.wall_between(v, MukaiVector(1, 0, 0), ctx)
    out = list(left) + mirrored
    if axis is not None:
        label = walls_mod.vline_codim0_label(v, axis.shape, ctx)
        out.append(
            walls_mod.Wall(axis.shape, axis.witness, label is not None, label)
        )
    return walls_mod.sort_walls(out)


def cmd_walls(args) -> dict:
    ctx = Context(args.n)
    window = _parse_window(args.window)
    if args.v is None and args.ell < 1:
        raise ValueError("give either --ell or an explicit --v with --s0")
    if args.v is not None:
        # explicit class: enumerate the walls crossing a chosen cross-section
        if args.s0 is None:
            raise ValueError("--v needs --s0 (a rational cross-section)")
        v = MukaiVector.parse(args.v)
        s0 = parse_frac(args.s0)
        wall_list = walls_mod.enumerate_walls_on_line(v, s0, ctx)
        payload = {
            "n": args.n,
            "v": vector_str(v),
            "s0": frac_str(s0),
            "walls": [wall_record(w) for w in wall_list],
        }
        if args.verify:
            brute = oracle_mod.brute_walls(v, s0, 10, ctx)
            payload["verify"] = {
                "agree": [w.shape for w in wall_list] == [w.shape for w in brute],
                "brute_force_bound": 10,
            }
        if args.svg:
            doc = svg_mod.render(wall_list, window, title=f"Walls for {vector_str(v)}")
            with open(args.svg, "w") as fh:
                fh.write(doc)
            payload["svg"] = args.svg
        return payload
    if is_perfect_square_int(args.ell * args.n):
        wall_list = _square_case_walls(args.n, args.ell, ctx)
        pell_ctx = None
    else:
        pell_ctx = pell_mod.solve_generator(args.n, args.ell)
        fam = walls_mod.fundamental_walls(pell_ctx)
        codim0 = walls_mod.codim0_walls(pell_ctx, _parse_m_range(args.m_range))
        seen = {}
        for w in list(fam) + list(codim0):
            seen.setdefault(w.shape, w)
        wall_list = walls_mod.sort_walls(seen.values())
    payload = {
        "n": args.n,
        "ell": args.ell,
        "v": vector_str(MukaiVector(1, 0, -args.ell)),
        "walls": [wall_record(w) for w in wall_list],
    }
    if args.verify:
        payload["verify"] = _verify_report(args.n, args.ell, ctx)
    if args.svg:
        doc = svg_mod.render(
            wall_list, window, title=f"Walls for 1 - {args.ell}rho (n = {args.n})"
        )
        with open(args.svg, "w") as fh:
            fh.write(doc)
        payload["svg"] = args.svg
    return payload


def is_perfect_square_int(k: int) -> bool:
    import math

    return k >= 0 and math.isqrt(k) ** 2 == k


def cmd_pell(args) -> dict:
    pc = pell_mod.solve_generator(args.n, args.ell)
    m_range = _parse_m_range(args.m_range)
    from .jsonio import surd_str

    iterates = []
    for m in m_range:
        it = pell_mod.iterate(pc, m)
        iterates.append({"m": m, "a": surd_str(it.a), "b": surd_str(it.b)})
    u_vecs = []
    for m in m_range:
        u, u_prime = pell_mod.u_vectors(pc, m)
        u_vecs.append({"m": m, "u": vector_str(u), "u_prime": vector_str(u_prime)})
    sols = [
        {
            "v1": vector_str(s.v1),
            "v2": vector_str(s.v2),
            "l1": s.l1,
            "l2": s.l2,
        }
        for s in pell_mod.numerical_solutions(pc, m_range)
    ]
    gen = pc.generator
    out = {
        "n": pc.n,
        "ell": pc.ell,
        "generator": {
            "p": surd_str(gen.x),
            "q": surd_str(gen.y),
            "matrix": f"{surd_str(gen.y)},{surd_str(gen.x * Fraction(pc.ell))};"
            f"{surd_str(gen.x)},{surd_str(gen.y)}",
        },
        "epsilon": pc.epsilon,
        "iterates": iterates,
        "u_vectors": u_vecs,
        "numerical_solutions": sols,
        "presentations": pell_mod.presentation_report(args.n, args.ell),
    }
    if pc.torsion is not None:
        out["torsion"] = "0,1;1,0"
    return out


def cmd_numsol(args) -> dict:
    if is_perfect_square_int(args.n * args.ell):
        return {
            "numerical_solutions": [
                {"v1": "1,0,0", "v2": "0,0,1", "l1": 1, "l2": args.ell}
            ],
            "presentations": pell_mod.presentation_report(args.n, args.ell),
        }
    pc = pell_mod.solve_generator(args.n, args.ell)
    sols = pell_mod.numerical_solutions(pc, _parse_m_range(args.m_range))
    return {
        "numerical_solutions": [
            {"v1": vector_str(s.v1), "v2": vector_str(s.v2), "l1": s.l1, "l2": s.l2}
            for s in sols
        ],
        "presentations": pell_mod.presentation_report(args.n, args.ell),
    }


def cmd_classify(args) -> dict:
    ctx = Context(args.n)
    v = MukaiVector(1, 0, -args.ell)
    pt = StabilityPoint(parse_frac(args.s), parse_frac(args.t2))
    if is_perfect_square_int(args.ell * args.n):
        wall_list = _square_case_walls(args.n, args.ell, ctx)
        pc = None
    else:
        pc = pell_mod.solve_generator(args.n, args.ell)
        wall_list = list(walls_mod.fundamental_walls(pc)) + list(
            walls_mod.codim0_walls(pc, _parse_m_range(args.m_range))
        )
    rep = walls_mod.classify_point(v, pt, wall_list, ctx)
    out = chamber_record(rep)
    if rep.kind == "OnWall" and pc is not None:
        label = walls_mod.is_codim0(rep.wall, pc)
        out["codim0"] = label is not None
        if label is not None:
            out["m"] = label
    return out


def cmd_intervals(args) -> dict:
    pc = pell_mod.solve_generator(args.n, args.ell)
    lam = parse_frac(getattr(args, "lambda"))
    idx = pell_mod.interval_index(pc, lam)
    out = {"lambda": frac_str(lam), "m": idx["m"], "starred": idx["starred"]}
    if idx["m"] <= 0:
        out["verdict"] = pell_mod.sheaf_verdict(pc, lam, idx["m"])["verdict"]
    return out


def cmd_act(args) -> dict:
    ctx = Context(args.n)
    g = parse_gmatrix_text(args.g)
    v = MukaiVector.parse(args.v)
    image = fmgroup.act_on_vector(v, g, ctx)
    return {"g": gmatrix_record(g), "v": vector_str(v), "image": vector_str(image)}


def cmd_mobius(args) -> dict:
    ctx = Context(args.n)
    g = parse_gmatrix_text(args.g)
    z = parse_qnc(args.z, args.n)
    image = fmgroup.mobius(g, z, ctx)
    return {"g": gmatrix_record(g), "z": qnc_str(z), "image": qnc_str(image)}


def cmd_wmax(args) -> dict:
    ctx = Context(args.n)
    v = MukaiVector(1, 0, -args.ell)
    if is_perfect_square_int(args.ell * args.n):
        wall_list = _square_case_walls(args.n, args.ell, ctx)
    else:
        pc = pell_mod.solve_generator(args.n, args.ell)
        wall_list = walls_mod.fundamental_walls(pc)
    return wmax_record(walls_mod.w_max_report(v, wall_list, ctx))


def _verify_report(n: int, ell: int, ctx: Context) -> dict:
    """Oracle cross-check on the fundamental cross-section.

    The brute scan is bound-limited: it can only see walls owning a witness
    with entries within the bound, so the sound check is containment (every
    brute wall must be enumerated); `exhaustive` reports whether the bound
    happened to cover everything the enumeration found."""
    v = MukaiVector(1, 0, -ell)
    if is_perfect_square_int(ell * n):
        import math

        s0 = -Fraction(math.isqrt(ell * n), n)
    else:
        pc = pell_mod.solve_generator(n, ell)
        it = pell_mod.iterate(pc, -1)
        s0 = pell_mod._ratio_over_sqrt_n(it.b, it.a, n)
    bound = 10
    fast = walls_mod.enumerate_walls_on_line(v, s0, ctx)
    brute = oracle_mod.brute_walls(v, s0, bound, ctx)
    fast_shapes = {w.shape for w in fast}
    return {
        "cross_section": frac_str(s0),
        "enumerated": len(fast),
        "brute_force_bound": bound,
        "agree": {w.shape for w in brute} <= fast_shapes,
        "exhaustive": {w.shape for w in brute} == fast_shapes,
    }


def cmd_verify(args) -> dict:
    ctx = Context(args.n)
    return _verify_report(args.n, args.ell, ctx)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stabwalls",
        description="Exact wall-and-chamber computations for rank-one "
        "ideal-sheaf classes on abelian surfaces",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, m_range="-2..2"):
        p.add_argument("--n", type=int, required=True, help="(H^2)/2")
        p.add_argument("--ell", type=int, required=True, help="v = (1, 0, -ell)")
        p.add_argument("--m-range", default=m_range, help="label range lo..hi")

    p = sub.add_parser("walls", help="wall set, JSON and optional SVG")
    p.add_argument("--n", type=int, required=True, help="(H^2)/2")
    p.add_argument("--ell", type=int, default=0, help="v = (1, 0, -ell)")
    p.add_argument("--m-range", default="-2..2", help="label range lo..hi")
    p.add_argument("--v", help='explicit class "r,d,a" (needs --s0)')
    p.add_argument("--s0", help="cross-section abscissa for --v")
    p.add_argument("--window", default="-3:1:3/2", help="smin:smax:tmax")
    p.add_argument("--svg", help="write an SVG diagram to this path")
    p.add_argument("--verify", action="store_true", help="run the brute-force oracle")
    p.set_defaults(fn=cmd_walls)

    p = sub.add_parser("pell", help="generator, iterates, isotropic pairs")
    common(p, m_range="-3..3")
    p.set_defaults(fn=cmd_pell)

    p = sub.add_parser("numsol", help="numerical solutions of (1,0,-ell)")
    common(p, m_range="-3..3")
    p.set_defaults(fn=cmd_numsol)

    p = sub.add_parser("classify", help="chamber classification of a point")
    common(p)
    p.add_argument("--s", required=True, help="s coordinate (rational)")
    p.add_argument("--t2", required=True, help="t^2 coordinate (positive rational)")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("intervals", help="slope interval index and verdict")
    common(p)
    p.add_argument("--lambda", required=True, help="slope (rational)")
    p.set_defaults(fn=cmd_intervals)

    p = sub.add_parser("act", help="lattice action of a group matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", required=True, help='matrix "a,b;c,d" with surd entries')
    p.add_argument("--v", required=True, help='vector "r,d,a"')
    p.set_defaults(fn=cmd_act)

    p = sub.add_parser("mobius", help="half-plane action of a group matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", required=True, help='matrix "a,b;c,d" with surd entries')
    p.add_argument("--z", required=True, help='point "x+y*i", field coefficients')
    p.set_defaults(fn=cmd_mobius)

    p = sub.add_parser("wmax", help="outermost wall and Gieseker ranges")
    common(p)
    p.set_defaults(fn=cmd_wmax)

    p = sub.add_parser("verify", help="oracle cross-check of the enumeration")
    common(p)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        payload = args.fn(args)
    except (PreconditionError, ValueError, ZeroDivisionError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 2
    except InvariantViolation as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 3
    _emit(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
