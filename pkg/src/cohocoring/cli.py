"""Command-line entry point.

    cohocoring gallery
    cohocoring validate   --object NAME [--manifest FILE]
    cohocoring cohomology --object NAME [--theory hh|hc|hp] [--direction co|homology] [--degree N]
    cohocoring check CHECK --object NAME [--degree N]

CHECK is one of lemma31, lemma32, prop32, prop33, prop34, prop35, prop36, identities.
Exit codes: 0 all checks pass, 1 a check failed, 2 the input was invalid or a
precondition did not hold.  ``COHOCORING_FIELD`` (``Q``, ``F7``, ``7``) overrides the field.
"""

import argparse
import json
import os
import sys
import time

from . import algebra as alg
from . import algebroid as ab
from . import coring as cr
from . import cyclic as cy
from . import gallery
from . import homology as hm
from . import manifest as mf
from .errors import BadCharacteristic, CohocoringError, ParseError
from .linalg import QQ

CHECKS = ["lemma31", "lemma32", "prop32", "prop33", "prop34", "prop35", "prop36", "identities"]
THEORIES = ["hh", "hc", "hp"]


class InputInvalid(Exception):
    """Bad input or unmet precondition: exit code 2."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail or {}


# ---------------------------------------------------------------------------
# object resolution

class Context:
    """Where objects come from: the built-in gallery or a loaded manifest."""

    def __init__(self, manifest_path=None, check=True):
        env = os.environ.get("COHOCORING_FIELD")
        field = mf.parse_field(env) if env else None
        self.manifest = None
        if manifest_path:
            self.manifest = mf.load(manifest_path, field=field, check=check)
            self.field = self.manifest.field
            self.default_N = self.manifest.N
        else:
            self.field = field or QQ
            self.default_N = 4

    def names(self):
        return self.manifest.names() if self.manifest else gallery.names() + gallery.module_coring_names()

    def resolve(self, name):
        """(object, kind) with kind in algebra, morphism, coring, algebroid, para-hopf, ..."""
        if name is None:
            raise InputInvalid("--object is required")
        if self.manifest is not None:
            obj = self.manifest.get(name)
            kind = self.manifest.kinds[name]
            if kind == "para-hopf" and not isinstance(obj, ab.ParaHopfSpec):
                kind = "algebroid"
            return obj, kind
        try:
            kind = gallery.kind_of(name)
        except ParseError:
            raise InputInvalid("unknown object %r (see `cohocoring gallery`)" % name, {"name": name})
        return gallery.get(name, self.field), kind

    def coseparator_for(self, name, coring, module=None):
        if self.manifest is None:
            if module is None and gallery.kind_of(name) in ("coring", "coalgebra"):
                return gallery.coseparator_for(name, self.field)
            return cr.find_coseparating(coring, module)
        for nm in self.manifest.names():
            if self.manifest.kinds[nm] != "coseparator" or nm in self.manifest.errors:
                continue
            d = self.manifest.objects[nm]
            if d.coring is coring and getattr(d, "manifest_module", None) is module:
                return d
        return cr.find_coseparating(coring, module)

    def haar_for(self, P):
        if self.manifest is not None:
            for nm in self.manifest.names():
                if self.manifest.kinds[nm] == "haar" and nm not in self.manifest.errors:
                    hs = self.manifest.objects[nm]
                    if hs.algebroid is P:
                        return ab.check_haar(P, hs.theta, hs.convention)
        return ab.find_haar(P, require_normal=True)


def _module_coring_of(obj, kind):
    if kind == "module-coring":
        return obj
    if kind == "para-hopf":
        return ab.self_module_coring(obj)
    if kind in ("coring", "coalgebra"):
        return ab.enveloping_action_module(obj)
    raise InputInvalid("object of kind %s carries no module coring" % kind)


def _algebra_of(obj, kind):
    if kind == "algebra":
        return obj
    if kind == "para-hopf" and "sweedler_of" in getattr(obj, "extra", {}):
        return obj.extra["sweedler_of"].target
    raise InputInvalid("this check needs an algebra (or a Sweedler bialgebroid), got %s" % kind)


def _need_para_hopf(obj, kind):
    if kind != "para-hopf":
        raise InputInvalid("this check needs a para-Hopf algebroid, got %s" % kind)
    return obj


def build_object(obj, kind, N, pipeline="natural"):
    """The (co)cyclic object whose homology `cohomology` reports."""
    if pipeline == "cm":
        return cy.cm_cocyclic(_need_para_hopf(obj, kind), N)
    if pipeline == "sweedler":
        A = _algebra_of(obj, kind)
        P = ab.sweedler_bialgebroid(alg.unit_map(A))
        return cy.dualize(cy.hopf_cocyclic(ab.self_module_coring(P), N))
    if kind == "algebra":
        return cy.algebra_cyclic(obj, N)
    if kind == "coalgebra":
        return cy.coalgebra_cocyclic(obj, N)
    if kind == "coring":
        if alg.is_field_algebra(obj.base):
            return cy.coalgebra_cocyclic(obj, N)
        return cy.coring_cocyclic(obj, N)
    if kind == "para-hopf":
        return cy.hopf_cocyclic(ab.self_module_coring(obj), N)
    if kind == "module-coring":
        return cy.hopf_cocyclic(obj, N)
    raise InputInvalid("no (co)cyclic object is attached to kind %s" % kind)


# ---------------------------------------------------------------------------
# commands

def _run(label, fn):
    try:
        out = fn()
        row = {"check": label, "passed": True}
        if isinstance(out, dict):
            row["info"] = out
        return row
    except CohocoringError as e:
        return {"check": label, "passed": False, "error": e.report()}


def validators(obj, kind):
    """[(label, thunk)] covering every axiom of the object's kind."""
    if kind == "algebra":
        return [("algebra axioms", lambda: alg.check_algebra(obj))]
    if kind == "morphism":
        return [("morphism", lambda: alg.check_morphism(obj))]
    if kind in ("coring", "coalgebra"):
        return [("base algebra", lambda: alg.check_algebra(obj.base)),
                ("carrier bimodule", lambda: alg.check_bimodule(obj.carrier)),
                ("coring axioms", lambda: cr.check_coring(obj))]
    if kind in ("algebroid", "para-hopf"):
        H, R = obj.total, obj.base
        out = [("total algebra", lambda: alg.check_algebra(H)),
               ("base algebra", lambda: alg.check_algebra(R)),
               ("alpha homomorphism", lambda: alg.make_morphism(R, H, obj.alpha.matrix, "homomorphism")),
               ("beta antihomomorphism",
                lambda: alg.make_morphism(R, H, obj.beta.matrix, "antihomomorphism")),
               ("bialgebroid axioms", lambda: ab.check_algebroid(obj))]
        if kind == "para-hopf":
            out += [("T antihomomorphism", lambda: alg.make_morphism(H, H, obj.T.matrix, "antihomomorphism")),
                    ("para-antipode", lambda: ab.check_para_hopf(obj))]
        return out
    if kind == "module-coring":
        return [("module coring", lambda: ab.check_module_coring(obj))]
    if kind == "haar":
        def haar():
            hs = ab.check_haar(obj.algebroid, obj.theta, obj.convention)
            return {"normal": hs.normal, "convention": hs.convention}
        return [("Haar system", haar)]
    if kind == "coseparator":
        def cosep():
            cr.check_coseparator(obj.coring, obj.delta, getattr(obj, "manifest_module", None))
            return {"coring": obj.coring.name}
        return [("coseparability", cosep)]
    raise InputInvalid("cannot validate kind %s" % kind)


def cmd_gallery(ctx, args):
    rows = []
    for name in gallery.names() + gallery.module_coring_names():
        rows.append({"name": name, "kind": gallery.kind_of(name)})
    return {"objects": rows, "passed": True}


def cmd_validate(ctx, args):
    obj, kind = ctx.resolve(args.object)
    checks = [_run(label, fn) for label, fn in validators(obj, kind)]
    return {"object": args.object, "kind": kind, "checks": checks,
            "passed": all(c["passed"] for c in checks)}


def cmd_cohomology(ctx, args):
    obj, kind = ctx.resolve(args.object)
    N = args.degree or ctx.default_N
    direction = {"co": hm.COHOMOLOGY, "homology": hm.HOMOLOGY, None: None}[args.direction]
    X = build_object(obj, kind, N, args.pipeline)
    if args.theory == "hh":
        rep = hm.hochschild(X, direction)
    elif args.theory == "hc":
        rep = hm.cyclic_invariant(X, direction)
    else:
        rep = hm.periodic_estimate(X, direction)
    out = rep.as_dict()
    out.update(object=args.object, kind=kind, truncation=N, pipeline=args.pipeline, passed=True)
    return out


def _dims_agree(label, a, b, top):
    da, db = a.dims[:top + 1], b.dims[:top + 1]
    return {"check": label, "passed": da == db, "left": da, "right": db}


def check_identities(ctx, obj, kind, N):
    objs = []
    if kind == "para-hopf":
        objs = [cy.hopf_cocyclic(ab.self_module_coring(obj), N), cy.cm_cocyclic(obj, N)]
    else:
        objs = [build_object(obj, kind, N)]
    objs += [cy.dualize(X) for X in objs if X.kind == "cocyclic"]
    rows = []
    for X in objs:
        rep = cy.verify_identities(X)
        bad = [r for r in rep["relations"] if not r["passed"]]
        row = {"check": "identities %s %s" % (rep["kind"], rep["object"]), "passed": rep["passed"],
               "relations": len(rep["relations"])}
        if bad:
            row["failures"] = bad[:5]
        rows.append(row)
    return rows


def cmd_check(ctx, args):
    obj, kind = ctx.resolve(args.object)
    N = args.degree or ctx.default_N
    name = args.check
    rows = []
    extra = {}
    if name == "identities":
        rows = check_identities(ctx, obj, kind, N)
    elif name == "lemma31":
        rows = [ab.check_lemma31(_module_coring_of(obj, kind))]
    elif name == "lemma32":
        M = _module_coring_of(obj, kind)
        rows = [ab.check_lemma32(M, n) for n in range(1, N + 1)]
    elif name == "prop32":
        P = _need_para_hopf(obj, kind)
        d = ctx.coseparator_for(args.object, P.coring, ab.self_module_coring(P))
        if d is None:
            raise InputInvalid("precondition: %s has no H-linear coseparator on itself" % P.name,
                               {"precondition": "coseparator"})
        rows = [_run("Haar system from coseparator", lambda: _haar_info(ab.haar_from_coseparator(P, d)))]
    elif name == "prop33":
        if kind == "haar":
            P, hs = obj.algebroid, ab.check_haar(obj.algebroid, obj.theta, obj.convention)
        else:
            P = _need_para_hopf(obj, kind)
            hs = ctx.haar_for(P)
        if hs is None or not hs.normal:
            raise InputInvalid("precondition: no normal Haar system on %s" % P.name,
                               {"precondition": "normal Haar system"})
        rep = hm.verify_prop33(P, hs.theta, N)
        extra = {"theta": _matrix_json(hs.theta), "ker_alpha_minus_beta": rep["ker_alpha_minus_beta"]}
        rows = [{"check": "HC degree %d" % r["degree"], "passed": r["passed"], "dim": r["dim"],
                 "expected": r["expected"]} for r in rep["degrees"]]
    elif name == "prop34":
        rows, extra = _prop34(ctx, args.object, obj, kind, N)
    elif name == "prop35":
        A = _algebra_of(obj, kind)
        rows = _iso_rows(lambda: cy.iso_sweedler(A, N), N, swap=True)
    elif name == "prop36":
        P = _need_para_hopf(obj, kind)
        rows = _iso_rows(lambda: cy.iso_cm(P, N), N)
    out = {"object": args.object, "kind": kind, "check": name, "truncation": N, "checks": rows,
           "passed": all(r["passed"] for r in rows)}
    out.update(extra)
    return out


def _matrix_json(m):
    return [[m.field.to_str(x) for x in row] for row in m.to_dense()]


def _haar_info(hs):
    return {"theta": _matrix_json(hs.theta), "normal": hs.normal}


def _iso_rows(build, N, swap=False):
    try:
        Psi, Phi = build()
    except CohocoringError as e:
        return [{"check": "Psi, Phi certified mutually inverse", "passed": False, "error": e.report()}]
    rows = [{"check": "Psi, Phi certified mutually inverse", "passed": True,
             "generators_checked": sum(c.checked for c in Psi.certificates),
             "exhaustive": all(c.exhaustive for c in Psi.certificates)}]
    X, Y = Psi.source, Psi.target
    top = min(3, N - 1)
    rows.append(_dims_agree("HH dims agree, degrees <= %d" % top, hm.hochschild(X), hm.hochschild(Y), top))
    rows.append(_dims_agree("HC dims agree, degrees <= %d" % top,
                            hm.cyclic_invariant(X), hm.cyclic_invariant(Y), top))
    return rows


def _prop34(ctx, name, obj, kind, N):
    if kind == "coseparator":
        d, M = obj, getattr(obj, "manifest_module", None)
        C = obj.coring
        X = cy.hopf_cocyclic(M, N) if M is not None else cy.coring_cocyclic(C, N)
    elif kind in ("coring", "coalgebra"):
        C, M = obj, None
        d = ctx.coseparator_for(name, C)
        X = cy.coring_cocyclic(C, N)
    elif kind in ("module-coring", "para-hopf"):
        M = _module_coring_of(obj, kind)
        C = M.coring
        d = ctx.coseparator_for(name, C, M)
        X = cy.hopf_cocyclic(M, N)
    else:
        raise InputInvalid("prop34 needs a coring, module coring or coseparator, got %s" % kind)
    if d is None:
        raise InputInvalid("precondition: %s is not coseparable" % C.name, {"precondition": "coseparator"})
    rows = [_run("coseparator validates", lambda: cr.check_coseparator(C, d.delta, M) and None)]
    cert = {}

    def homotopy():
        c = hm.coseparable_homotopy(X, d)
        cert.update(degrees=c.degrees, degree0=c.degree0)
        return {"degrees": c.degrees}
    rows.append(_run("bh + hb = id", homotopy))
    hh = hm.hochschild(X).dims
    rows.append({"check": "HH vanishes in degrees 1..%d" % (len(hh) - 2),
                 "passed": all(v == 0 for v in hh[1:-1]), "dims": hh})
    try:
        hc = hm.cyclic_invariant(X).dims
        rows.append({"check": "odd HC vanishes", "passed": all(v == 0 for v in hc[1::2][:(len(hc) - 1) // 2]),
                     "dims": hc})
    except BadCharacteristic as e:
        rows.append({"check": "odd HC vanishes", "passed": True, "skipped": e.report()})
    return rows, {"homotopy": cert}


COMMANDS = {"gallery": cmd_gallery, "validate": cmd_validate, "cohomology": cmd_cohomology, "check": cmd_check}


# ---------------------------------------------------------------------------
# output

def render_text(report):
    lines = []
    echo = report.get("command", {})
    lines.append("command: " + " ".join("%s=%s" % (k, echo[k]) for k in sorted(echo) if echo[k] is not None))
    if "objects" in report:
        w = max(len(r["name"]) for r in report["objects"])
        for r in report["objects"]:
            lines.append("  %-*s  %s" % (w, r["name"], r["kind"]))
    if "dims" in report:
        lines.append("%s %s (%s) of %s" % (report["theory"], report["direction"], report["method"],
                                            report["object"]))
        for n, v in zip(report["degrees"], report["dims"]):
            mark = "  (edge)" if report.get("edge_truncated_degree") == n else ""
            lines.append("  degree %2d  %6s%s" % (n, v, mark))
        if "stabilized" in report:
            lines.append("  stabilized: %s" % report["stabilized"])
    for c in report.get("checks", []):
        status = "PASS" if c["passed"] else "FAIL"
        label = c.get("check", "")
        if "n" in c and "lemma32" == label:
            label = "lemma32 n=%d" % c["n"]
        lines.append("  [%s] %s" % (status, label))
        if not c["passed"] and "error" in c:
            lines.append("         %s: %s" % (c["error"]["error"], c["error"]["message"]))
            lines.append("         witness: %s" % json.dumps(c["error"]["witness"], sort_keys=True))
        elif not c["passed"] and c.get("failures"):
            lines.append("         failures: %s" % json.dumps(c["failures"], sort_keys=True))
    if "error" in report:
        lines.append("error: %s: %s" % (report["error"]["error"], report["error"]["message"]))
        if report["error"].get("witness"):
            lines.append("witness: %s" % json.dumps(report["error"]["witness"], sort_keys=True))
    lines.append("result: %s" % ("PASS" if report.get("passed") else "FAIL"))
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="cohocoring", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("check", nargs="?", choices=CHECKS, help="which check (for the check command)")
    p.add_argument("--manifest", help="JSON manifest file (default: built-in gallery)")
    p.add_argument("--object", help="object name")
    p.add_argument("--degree", type=int, help="truncation degree N")
    p.add_argument("--theory", choices=THEORIES, default="hc")
    p.add_argument("--direction", choices=["co", "homology"])
    p.add_argument("--pipeline", choices=["natural", "cm", "sweedler"], default="natural",
                   help="which (co)cyclic object to use for `cohomology`")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    return p


def run(argv=None):
    """Returns (exit code, report dict)."""
    args = build_parser().parse_args(argv)
    echo = {"command": args.command, "check": args.check, "object": args.object, "degree": args.degree,
            "manifest": args.manifest}
    if args.command == "cohomology":
        echo.update(theory=args.theory, direction=args.direction, pipeline=args.pipeline)
    t0 = time.perf_counter()
    try:
        if args.command == "check" and args.check is None:
            raise InputInvalid("check needs one of: %s" % ", ".join(CHECKS))
        if args.degree is not None and args.degree < 1:
            raise InputInvalid("--degree must be at least 1")
        ctx = Context(args.manifest, check=args.command != "validate")
        report = COMMANDS[args.command](ctx, args)
        code = 0 if report["passed"] else 1
    except InputInvalid as e:
        report = {"passed": False, "error": {"error": "InputInvalid", "message": str(e), "witness": e.detail}}
        code = 2
    except (ParseError, BadCharacteristic) as e:
        report = {"passed": False, "error": e.report()}
        code = 2
    except OSError as e:
        report = {"passed": False, "error": {"error": type(e).__name__, "message": str(e), "witness": {}}}
        code = 2
    except CohocoringError as e:
        # a structural violation surfaced while building: the input object is invalid
        report = {"passed": False, "error": e.report()}
        code = 2 if args.command in ("cohomology", "check") else 1
    report["command"] = echo
    report["schema"] = 1
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 3)
    return code, report, args


def main(argv=None):
    code, report, args = run(argv)
    if args.json:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
