"""Command-line surface.

Subcommands: cut, closure, rank, hull, hilbert, certify, nonfg, vpi,
kronecker, facecuts, examples, render.  Results are emitted as JSON
(default) or CSV; the examples/render report paths additionally write
matplotlib figures to files, and --svg writes the exact hand-emitted SVG.

Exit codes: 0 success/certified, 2 parse error, 3 refuted or negative
result, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import config, jsonio
from .bodies import HYPERBOLA, SHIFTED_HYPERBOLA, SQRT2_LINE, RationalPoly
from .cgengine import (
    cg_cut,
    chvatal_rank,
    closure_bruteforce,
    integer_hull,
    schrijver_closure,
)
from .certify import face_cuts, nonfg_witness, search_certificate, verify_certificate
from .errors import (
    ApproximationBudget,
    CGLabError,
    CertifiedInstead,
    RankExceeded,
    SearchBudgetExceeded,
    UnstableBox,
)
from .hilbert import RationalCone, hilbert_basis
from .diophantine import kronecker_approx, v_pi
from .qfield import QuadValue
from .render import render_figure, write_svg

EXIT_OK, EXIT_PARSE, EXIT_NEGATIVE, EXIT_BUDGET = 0, 2, 3, 4


def _parse_window(text):
    spans = []
    for span in text.split(","):
        lo, hi = span.split(":")
        spans.append((Fraction(lo), Fraction(hi)))
    return spans


def _parse_ints(text):
    return tuple(int(x) for x in text.split(","))


def _cut_payload(cut):
    return {"c": list(cut.c), "rhs": cut.rhs}


def _report_payload(report):
    return {
        "exactness": report.exactness,
        "cuts": [_cut_payload(c) for c in report.cuts],
        "polyhedron": jsonio.enc_hpoly(report.polyhedron),
    }


def _cert_payload(cert):
    return {
        "verdict": cert.verdict,
        "F": [list(f) for f in cert.directions],
        "cuts": [_cut_payload(c) for c in cert.cuts],
        "region": jsonio.enc_hpoly(cert.region),
        "witness": None if cert.witness is None else [jsonio.enc_quad(x) for x in cert.witness],
        "dropped": [list(d) for d in cert.dropped],
    }


def _facet_rows(H):
    n = H.n
    rows = []
    for a, b in zip(H.A, H.b):
        row = {f"a{i + 1}": str(a[i]) for i in range(n)}
        row["b"] = jsonio.enc_fraction(b)
        rows.append(row)
    return rows


def _emit(args, payload, rows=None):
    text = jsonio.dumps(payload)
    if args.format == "csv" and rows:
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(out.getvalue())
    else:
        sys.stdout.write(text)


def _load_body(args):
    return jsonio.load_body(args.body)


def _svg_if_requested(args, facets=(), cuts=(), points=(), window=((-1, 6), (-1, 6))):
    if getattr(args, "svg", None):
        write_svg(args.svg, window, facets=facets, cuts=cuts, points=points)


# -- subcommand handlers -----------------------------------------------------


def cmd_cut(args):
    body = _load_body(args)
    cut = cg_cut(body, _parse_ints(args.direction))
    if cut is None:
        _emit(args, {"kind": "cut", "cut": None, "note": "unbounded direction"})
        return EXIT_NEGATIVE
    _emit(args, {"kind": "cut", "cut": _cut_payload(cut)}, [_cut_payload(cut)])
    _svg_if_requested(args, cuts=[(cut.c, cut.rhs)])
    return EXIT_OK


def cmd_closure(args):
    body = _load_body(args)
    if isinstance(body, RationalPoly):
        report = schrijver_closure(body.hrep)
    else:
        report = closure_bruteforce(body, args.radius)
    H = report.polyhedron
    _emit(args, {"kind": "closure", **_report_payload(report)}, _facet_rows(H))
    _svg_if_requested(
        args,
        facets=list(zip(H.A, H.b)),
        cuts=[(c.c, c.rhs) for c in report.cuts],
    )
    return EXIT_OK


def cmd_rank(args):
    body = _load_body(args)
    if not isinstance(body, RationalPoly):
        print("rank needs a rational polyhedron body", file=sys.stderr)
        return EXIT_PARSE
    try:
        rank, trace = chvatal_rank(body.hrep, args.max_iter)
    except RankExceeded as exc:
        _emit(args, {"kind": "rank", "rank": None, "note": str(exc),
                     "trace": [jsonio.enc_hpoly(h) for h in exc.trace]})
        return EXIT_BUDGET
    _emit(
        args,
        {"kind": "rank", "rank": rank, "trace": [jsonio.enc_hpoly(h) for h in trace]},
        [{"iteration": i, "rows": len(h.A)} for i, h in enumerate(trace)],
    )
    return EXIT_OK


def cmd_hull(args):
    body = _load_body(args)
    hull = integer_hull(body, _parse_window(args.box))
    H = hull.to_h()
    payload = {"kind": "integer_hull", "hull": jsonio.enc_vpoly(hull), "facets": jsonio.enc_hpoly(H)}
    _emit(args, payload, _facet_rows(H))
    _svg_if_requested(args, facets=list(zip(H.A, H.b)),
                      points=[v for v in hull.vertices])
    return EXIT_OK


def cmd_hilbert(args):
    with open(args.cone) as fh:
        obj = json.load(fh)
    gens = [tuple(int(x) for x in g) for g in obj["generators"]]
    cone = RationalCone.make(gens)
    basis = hilbert_basis(cone)
    _emit(
        args,
        {"kind": "hilbert_basis", "generators": [list(g) for g in cone.generators],
         "basis": [list(h) for h in basis]},
        [{f"h{i + 1}": x for i, x in enumerate(h)} for h in basis],
    )
    return EXIT_OK


def cmd_certify(args):
    body = _load_body(args)
    cert = search_certificate(body, args.radius)
    if cert is not None:
        _emit(args, {"kind": "certificate", **_cert_payload(cert)})
        return EXIT_OK
    if not isinstance(body.recession(), RationalCone):
        _emit(args, {"kind": "certificate", "verdict": "Refuted",
                     "note": "recession cone is not rational polyhedral"})
        return EXIT_NEGATIVE
    from .cgengine import _grid

    evidence = verify_certificate(body, list(_grid(body.n, args.radius)))
    _emit(args, {"kind": "certificate", **_cert_payload(evidence),
                 "note": f"no certificate up to radius {args.radius}"})
    return EXIT_NEGATIVE


def cmd_nonfg(args):
    body = _load_body(args)
    try:
        witness = nonfg_witness(body, args.radius)
    except CertifiedInstead as exc:
        _emit(args, {"kind": "nonfg", "witness": None, "note": str(exc)})
        return EXIT_OK
    _emit(args, {"kind": "nonfg", "radius": args.radius,
                 "witness": [jsonio.enc_quad(x) for x in witness]})
    return EXIT_NEGATIVE


def cmd_vpi(args):
    with open(args.pi) as fh:
        pi = jsonio.dec_quad_vec(json.load(fh)["pi"])
    space = v_pi(pi)
    _emit(
        args,
        {
            "kind": "vpi",
            "pi": [jsonio.enc_quad(x) for x in space.pi],
            "index_set": list(space.index_set),
            "basis": [[jsonio.enc_fraction(x) for x in v] for v in space.basis],
        },
        [{f"v{i + 1}": str(x) for i, x in enumerate(v)} for v in space.basis] or None,
    )
    return EXIT_OK


def cmd_kronecker(args):
    with open(args.pi) as fh:
        pi = jsonio.dec_quad_vec(json.load(fh)["pi"])
    target = tuple(Fraction(x) for x in args.target.split(",")) if args.target else (Fraction(0),) * len(pi)
    app = kronecker_approx(pi, target, Fraction(args.eps), args.n0, budget=args.budget)
    _emit(
        args,
        {
            "kind": "approximant",
            "c": list(app.c),
            "m": app.m,
            "residual": [jsonio.enc_quad(x) for x in app.residual],
        },
        [{"c": ",".join(map(str, app.c)), "m": app.m}],
    )
    return EXIT_OK


def cmd_facecuts(args):
    body = _load_body(args)
    with open(args.G) as fh:
        floors = [(tuple(int(x) for x in g), int(fl)) for g, fl in json.load(fh)["floors"]]
    with open(args.alpha) as fh:
        alpha = jsonio.dec_quad_vec(json.load(fh)["alpha"])
    fam = face_cuts(body, alpha, args.alpha0, floors, Fraction(args.delta), args.n0)
    _emit(
        args,
        {
            "kind": "face_cuts",
            "alpha": [jsonio.enc_quad(x) for x in fam.alpha],
            "alpha0": fam.alpha0,
            "members": [
                {"c": list(m.c), "m": m.m, "g": list(m.g), "rhs": m.rhs}
                for m in fam.members
            ],
            "lambdas": [jsonio.enc_quad(l) for l in fam.lambdas],
            "region": jsonio.enc_hpoly(fam.region()),
        },
        [{"c": ",".join(map(str, m.c)), "m": m.m, "g": ",".join(map(str, m.g)),
          "rhs": m.rhs} for m in fam.members],
    )
    return EXIT_OK


def cmd_render(args):
    body = _load_body(args)
    window = _parse_window(args.window)
    cuts = []
    polys = []
    if args.radius:
        report = closure_bruteforce(body, args.radius)
        polys.append(report.polyhedron)
        cuts = [(c.c, c.rhs) for c in report.cuts]
    render_figure(args.out, window, body=body, polyhedra=polys, cuts=cuts,
                  title=os.path.basename(args.body))
    if args.svg:
        facets = []
        if polys:
            facets = list(zip(polys[0].A, polys[0].b))
        write_svg(args.svg, window, facets=facets, cuts=cuts)
    _emit(args, {"kind": "render", "out": args.out})
    return EXIT_OK


# -- worked examples ---------------------------------------------------------


EXPECTED_HULLS = {
    1: {"A": [["-1", "-1"], ["-1", "0"], ["0", "-1"]], "b": ["-3", "-1", "-1"]},
    2: {"A": [["-1", "-1"], ["-1", "0"], ["0", "-1"]], "b": ["-4", "-1", "-1"]},
}


def _example_one(outdir):
    body = HYPERBOLA
    hull = integer_hull(body, [(0, 10), (0, 10)])
    facets = jsonio.enc_hpoly(hull.to_h())
    witnesses = {}
    for radius in range(1, 9):
        w = nonfg_witness(body, radius)
        witnesses[radius] = {
            "witness": [jsonio.enc_quad(x) for x in w],
            "outside_body": not body.membership(w),
        }
    payload = {
        "kind": "example",
        "which": 1,
        "hull_facets": facets,
        "hull_matches_expected": facets == EXPECTED_HULLS[1],
        "nonfg_witnesses": witnesses,
        "conclusion": "refuted at every tested radius; no finite cut family found",
    }
    rows = _facet_rows(hull.to_h())
    figure = None
    if outdir:
        figure = os.path.join(outdir, "example1.png")
        report = closure_bruteforce(body, 4)
        render_figure(
            figure, ((-1, 8), (-1, 8)), body=body, polyhedra=[hull.to_h()],
            cuts=[(c.c, c.rhs) for c in report.cuts],
            title="hyperbola: hull vs truncated closure",
        )
    return payload, rows, figure


def _example_two(outdir):
    body = SHIFTED_HYPERBOLA
    cert = verify_certificate(body, [(-1, 0), (0, -1), (-1, -1)])
    hull = integer_hull(body, [(0, 10), (0, 10)])
    closures = {}
    stable = True
    for radius in range(2, 9):
        rep = closure_bruteforce(body, radius)
        same = rep.polyhedron == hull.to_h()
        closures[radius] = {"facets": jsonio.enc_hpoly(rep.polyhedron), "equals_hull": same}
        stable = stable and same
    payload = {
        "kind": "example",
        "which": 2,
        "certificate": _cert_payload(cert),
        "hull_facets": jsonio.enc_hpoly(hull.to_h()),
        "hull_matches_expected": jsonio.enc_hpoly(hull.to_h()) == EXPECTED_HULLS[2],
        "closures": closures,
        "closure_stable_and_equal_to_hull": stable,
        "conclusion": "certified: the closure is finitely generated",
    }
    rows = _facet_rows(cert.region)
    figure = None
    if outdir:
        figure = os.path.join(outdir, "example2.png")
        render_figure(
            figure, ((-1, 8), (-1, 8)), body=body, polyhedra=[cert.region],
            cuts=[(c.c, c.rhs) for c in cert.cuts],
            title="shifted hyperbola: certified cut region",
        )
    return payload, rows, figure


def _example_three(outdir):
    body = SQRT2_LINE
    hull = integer_hull(body, [(-5, 5), (-5, 5)])
    tested = []
    for radius in range(1, 9):
        from .cgengine import _grid

        tested.append(
            {
                "radius": radius,
                "finite_support_directions": sum(
                    1 for c in _grid(2, radius) if body.support(c).value.is_finite
                ),
            }
        )
    payload = {
        "kind": "example",
        "which": 3,
        "hull_vertices": jsonio.enc_vpoly(hull)["vertices"],
        "hull_is_origin_only": hull.vertices == ((Fraction(0), Fraction(0)),),
        "grid_scan": tested,
        "conclusion": "integer hull is the lattice origin; every nonzero "
        "integer direction is unbounded, so no truncation constrains the line",
    }
    rows = [{"radius": t["radius"], "finite_dirs": t["finite_support_directions"]} for t in tested]
    figure = None
    if outdir:
        figure = os.path.join(outdir, "example3.png")
        render_figure(figure, ((-5, 5), (-5, 5)), body=body,
                      title="irrational line: lattice hull is the origin")
    return payload, rows, figure


def cmd_examples(args):
    outdir = args.outdir
    if outdir:
        os.makedirs(outdir, exist_ok=True)
    builder = {1: _example_one, 2: _example_two, 3: _example_three}[args.which]
    payload, rows, figure = builder(outdir)
    if figure:
        payload["figure"] = figure
    text = jsonio.dumps(payload)
    sys.stdout.write(text)
    if outdir:
        base = os.path.join(outdir, f"example{args.which}.report")
        with open(base + ".json", "w") as fh:
            fh.write(text)
        with open(base + ".csv", "w", newline="") as fh:
            if rows:
                writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
                writer.writeheader()
                writer.writerows(rows)
    if getattr(args, "svg", None) and args.which in (1, 2):
        body = HYPERBOLA if args.which == 1 else SHIFTED_HYPERBOLA
        hull = integer_hull(body, [(0, 10), (0, 10)])
        H = hull.to_h()
        write_svg(args.svg, ((-1, 8), (-1, 8)), facets=list(zip(H.A, H.b)),
                  points=hull.vertices)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--dim-bound", type=int, default=None,
                        help="ambient dimension cap (env CGLAB_DIM_BOUND)")
    shared.add_argument("--seed", type=int, default=config.DEFAULT_SEED,
                        help="seed echoed into reports (fixed default)")
    shared.add_argument("--format", choices=("json", "csv"), default="json")
    parser = argparse.ArgumentParser(
        prog="cglab",
        description="Exact rounded-cut closures and finite-generation certificates",
        parents=[shared],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **flags):
        p = sub.add_parser(name, parents=[shared])
        for flag, kwargs in flags.items():
            p.add_argument(flag, **kwargs)
        p.set_defaults(handler=handler)
        return p

    add("cut", cmd_cut,
        **{"--body": dict(required=True), "--direction": dict(required=True),
           "--svg": dict(default=None)})
    add("closure", cmd_closure,
        **{"--body": dict(required=True), "--radius": dict(type=int, default=3),
           "--svg": dict(default=None)})
    add("rank", cmd_rank,
        **{"--body": dict(required=True), "--max-iter": dict(type=int, default=20)})
    add("hull", cmd_hull,
        **{"--body": dict(required=True), "--box": dict(required=True),
           "--svg": dict(default=None)})
    add("hilbert", cmd_hilbert, **{"--cone": dict(required=True)})
    add("certify", cmd_certify,
        **{"--body": dict(required=True), "--radius": dict(type=int, default=3)})
    add("nonfg", cmd_nonfg,
        **{"--body": dict(required=True), "--radius": dict(type=int, default=3)})
    add("vpi", cmd_vpi, **{"--pi": dict(required=True)})
    add("kronecker", cmd_kronecker,
        **{"--pi": dict(required=True), "--target": dict(default=None),
           "--eps": dict(required=True), "--n0": dict(type=int, default=1),
           "--budget": dict(type=int, default=200_000)})
    add("facecuts", cmd_facecuts,
        **{"--body": dict(required=True), "--alpha": dict(required=True),
           "--alpha0": dict(type=int, required=True), "--G": dict(required=True),
           "--delta": dict(required=True), "--n0": dict(type=int, default=1)})
    add("examples", cmd_examples,
        **{"--which": dict(type=int, choices=(1, 2, 3), required=True),
           "--outdir": dict(default=None), "--svg": dict(default=None)})
    add("render", cmd_render,
        **{"--body": dict(required=True), "--out": dict(required=True),
           "--window": dict(default="-1:6,-1:6"), "--radius": dict(type=int, default=0),
           "--svg": dict(default=None)})
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.dim_bound is not None:
        os.environ[config.ENV_DIM_BOUND] = str(args.dim_bound)
    try:
        return args.handler(args)
    except (FileNotFoundError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"cglab: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ApproximationBudget, SearchBudgetExceeded, RankExceeded, UnstableBox) as exc:
        print(f"cglab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CGLabError as exc:
        print(f"cglab: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
