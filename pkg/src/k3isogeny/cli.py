"""Command line: analyze an arrangement, run the X side, match diagrams,
or run the acceptance self-test.

Exit codes: 0 all checks pass, 1 input error, 2 certificate failure.
"""
import argparse
import json
import os
import sys

from . import __version__, acceptance, pipeline
from . import arrangement as arrmod
from .errors import ArrangementError, CertificateFailure, ConcurrentTriple

EXIT_OK, EXIT_INPUT, EXIT_CERT = 0, 1, 2


def load_arrangement(path):
    """Parse and validate an arrangement file; ArrangementError on failure."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ArrangementError("cannot read %s: %s" % (path, exc.strerror))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArrangementError("%s:%d:%d: invalid JSON: %s" % (path, exc.lineno, exc.colno, exc.msg))
    if not isinstance(data, dict) or "lines" not in data:
        raise ArrangementError("%s: expected an object with a \"lines\" list" % path)
    try:
        return arrmod.validate(data), data
    except ConcurrentTriple as exc:
        raise ArrangementError("%s: lines %s are concurrent; arrangements with three "
                               "concurrent lines are out of scope"
                               % (path, ", ".join(str(i + 1) for i in exc.triple)))


def render_text(rep):
    out = ["%s (k3isogeny %s)" % (rep.meta["command"], __version__)]
    for v in rep.verdicts:
        out.append("  %-22s %-28s %s" % (v["name"], _short(v["value"]), "ok" if v["ok"] else "FAILED"))
    for c in rep.certificates:
        out.append("  certificate %-28s %s" % (c["name"], "ok" if c["ok"] else "FAILED"))
    for d in rep.diagrams:
        out.append("  diagram %-8s %d curves, %d edges" % (d["name"], len(d["graph"]),
                                                          len(d["graph"].edges)))
    for c in rep.certificates:
        if c["name"] == "diagram_isomorphism":
            out.append("  isomorphism W -> X:")
            for a, b in c["data"]["mapping"]:
                out.append("    %-10s -> %s" % (a, b))
    return "\n".join(out) + "\n"


def _short(value):
    text = value if isinstance(value, str) else json.dumps(pipeline.jsonable(value))
    return text if len(text) <= 28 else text[:25] + "..."


def emit(rep, args):
    if getattr(args, "dot", None):
        os.makedirs(args.dot, exist_ok=True)
        for name, text in rep.dot_files().items():
            with open(os.path.join(args.dot, "%s.dot" % name), "w") as fh:
                fh.write(text)
    if getattr(args, "text", False):
        sys.stdout.write(render_text(rep))
    else:
        sys.stdout.write(pipeline.dumps(rep.to_json()))
    return EXIT_OK if rep.ok else EXIT_CERT


def cmd_analyze(args):
    arr, source = load_arrangement(args.input)
    rep, _ = pipeline.analyze(arr, source)
    return emit(rep, args)


def cmd_xside(args):
    rep, _ = pipeline.xside(args.special)
    return emit(rep, args)


def cmd_match(args):
    arr, source = load_arrangement(args.input)
    rep, _ = pipeline.match(arr)
    rep.meta["input"] = source
    return emit(rep, args)


def cmd_selftest(args):
    def show(o):
        print(o.line(), flush=True)
    outcomes = acceptance.run_all(seed=args.seed, report=show)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(pipeline.dumps([o.to_json() for o in outcomes]))
    passed = sum(o.ok for o in outcomes)
    print("%d/%d criteria passed" % (passed, len(outcomes)))
    return EXIT_OK if passed == len(outcomes) else EXIT_CERT


def build_parser():
    p = argparse.ArgumentParser(prog="k3isogeny",
                                description="Certificates for six-line double sextics and "
                                            "their H+E7+E7 partners.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the arrangement pipeline")
    a.add_argument("--input", required=True, help="arrangement JSON file")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--text", action="store_true", help="human-readable summary")
    a.add_argument("--dot", metavar="DIR", help="write DOT diagrams to DIR")
    a.set_defaults(func=cmd_analyze)

    x = sub.add_parser("xside", help="run the X-side pipeline")
    x.add_argument("--special", action="store_true", help="the rank seventeen case")
    x.add_argument("--text", action="store_true", help="human-readable summary")
    x.add_argument("--dot", metavar="DIR", help="write DOT diagrams to DIR")
    x.set_defaults(func=cmd_xside)

    m = sub.add_parser("match", help="diagram isomorphism W -> X for an arrangement")
    m.add_argument("--input", required=True, help="arrangement JSON file")
    m.add_argument("--text", action="store_true", help="human-readable summary")
    m.set_defaults(func=cmd_match)

    s = sub.add_parser("selftest", help="run the acceptance criteria")
    s.add_argument("--seed", type=int, default=acceptance.SEED)
    s.add_argument("--json", metavar="FILE", help="also write outcomes as JSON")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ArrangementError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except CertificateFailure as exc:
        print("certificate failure: %s" % exc, file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
