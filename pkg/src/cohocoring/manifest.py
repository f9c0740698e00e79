"""JSON manifests: exact structure constants for algebras, corings, algebroids and friends.

Scalars are strings ("3", "-1/2").  Matrices are dense lists of rows.  A
coproduct is given per basis element as a list of ``[a, b, coef]`` pure
tensors; it is reduced into the balanced square on load.

    {
      "schema": 1,
      "field": "Q" | {"Fp": 7},
      "truncation": 4,
      "algebras":       {name: {"dim", "mult", "unit", "labels"?}},
      "morphisms":      {name: {"source", "target", "variant", "matrix"}},
      "corings":        {name: {"base", "dim", "left_action", "right_action", "coproduct", "counit"}},
      "algebroids":     {name: {"total", "base", "alpha", "beta", "coproduct", "counit", "T"?}},
      "module_corings": {name: {"algebroid", "coring" ("self" allowed), "action"}},
      "haar":           {name: {"algebroid", "theta", "convention"?}},
      "coseparators":   {name: {"coring", "module"?, "delta"}}
    }

``alpha``/``beta`` may be inline matrices or names of morphisms.
"""

import json

from . import algebra as alg
from . import algebroid as ab
from . import coring as cr
from .errors import CohocoringError, DimensionMismatch, ParseError
from .linalg import Field, Matrix, QQ

SECTIONS = ["algebras", "morphisms", "corings", "algebroids", "module_corings", "haar", "coseparators"]
KIND_OF_SECTION = {"algebras": "algebra", "morphisms": "morphism", "corings": "coring",
                   "algebroids": "para-hopf", "module_corings": "module-coring", "haar": "haar",
                   "coseparators": "coseparator"}


# ---------------------------------------------------------------------------
# fields and scalars

def parse_field(spec):
    if spec in (None, "Q", "QQ"):
        return QQ
    p = None
    if isinstance(spec, dict) and "Fp" in spec:
        p = spec["Fp"]
    elif isinstance(spec, str):
        s = spec.strip()
        if s.upper().startswith("F") and s[1:].isdigit():
            p = s[1:]
        elif s.isdigit():
            p = s
    if p is not None:
        try:
            return Field(int(p))
        except (TypeError, ValueError) as e:
            raise ParseError("unrecognised field %r: %s" % (spec, e), {"field": spec})
    raise ParseError("unrecognised field %r" % (spec,), {"field": spec})


def field_to_json(F):
    return "Q" if F.p == 0 else {"Fp": F.p}


def _mat_json(F, m):
    return [[F.to_str(x) for x in row] for row in m.to_dense()]


def _mat(F, rows, shape=None, where=""):
    try:
        m = Matrix.from_dense(F, [[F(x) for x in row] for row in rows], len(rows[0]) if rows else 0)
    except (TypeError, ValueError, ZeroDivisionError, IndexError, DimensionMismatch) as e:
        raise ParseError("bad matrix in %s: %s" % (where, e), {"at": where})
    if shape is not None and m.shape != shape:
        raise ParseError("matrix in %s has shape %s, expected %s" % (where, m.shape, shape),
                         {"at": where, "shape": list(m.shape), "expected": list(shape)})
    return m


# ---------------------------------------------------------------------------
# serialization

def algebra_json(A):
    F = A.field
    d = A.dim
    mult = [[[F.to_str(A.mult[i][j].get(k, F.zero)) for k in range(d)] for j in range(d)] for i in range(d)]
    return {"dim": d, "labels": list(A.labels), "mult": mult,
            "unit": [F.to_str(A.unit.get(k, F.zero)) for k in range(d)]}


def _pairs_json(F, C):
    return [[[a, b, F.to_str(c)] for (a, b), c in sorted(C.delta_keys(i).items())] for i in range(C.dim)]


class _Dumper:
    def __init__(self, field, N):
        self.field = field
        self.reserved = set()
        self.out = {"schema": 1, "field": field_to_json(field), "truncation": N}
        for s in SECTIONS:
            self.out[s] = {}

    def _unique(self, section, base, explicit=False):
        if explicit:
            return base
        name = base
        k = 2
        while name in self.reserved or any(name in self.out[s] for s in SECTIONS):
            name = "%s_%d" % (base, k)
            k += 1
        return name

    def algebra(self, A):
        for nm, blk in self.out["algebras"].items():
            if blk == algebra_json(A):
                return nm
        nm = self._unique("algebras", A.name)
        self.out["algebras"][nm] = algebra_json(A)
        return nm

    def coring(self, C, name=None):
        F = self.field
        R = self.algebra(C.base)
        nm = self._unique("corings", name or C.name, name is not None)
        self.out["corings"][nm] = {
            "base": R, "dim": C.dim,
            "left_action": [_mat_json(F, m) for m in C.carrier.left_action],
            "right_action": [_mat_json(F, m) for m in C.carrier.right_action],
            "coproduct": _pairs_json(F, C), "counit": _mat_json(F, C.counit)}
        return nm

    def algebroid(self, P, name=None):
        F = self.field
        blk = {"total": self.algebra(P.total), "base": self.algebra(P.base),
               "alpha": _mat_json(F, P.alpha.matrix), "beta": _mat_json(F, P.beta.matrix),
               "coproduct": _pairs_json(F, P.coring), "counit": _mat_json(F, P.coring.counit)}
        if getattr(P, "T", None) is not None:
            blk["T"] = _mat_json(F, P.T.matrix)
        nm = self._unique("algebroids", name or P.name, name is not None)
        self.out["algebroids"][nm] = blk
        return nm

    def module_coring(self, M, name=None):
        F = self.field
        P = self.algebroid(M.acting)
        if M.coring is M.acting.coring:
            C = "self"
        else:
            C = self.coring(M.coring)
        nm = self._unique("module_corings", name or M.name, name is not None)
        self.out["module_corings"][nm] = {"algebroid": P, "coring": C,
                                          "action": [_mat_json(F, m) for m in M.action]}
        return nm


def dump_objects(objects, field=QQ, N=4):
    """Manifest dict for {name: object} (dependencies are added under derived names)."""
    d = _Dumper(field, N)
    d.reserved = set(objects)
    for name, obj in objects.items():
        if isinstance(obj, alg.AlgebraSpec):
            d.out["algebras"][name] = algebra_json(obj)
        elif isinstance(obj, ab.ModuleCoringSpec):
            d.module_coring(obj, name)
        elif isinstance(obj, ab.AlgebroidSpec):
            d.algebroid(obj, name)
        elif isinstance(obj, cr.CoringSpec):
            d.coring(obj, name)
        else:
            raise TypeError("cannot serialise %r" % (obj,))
    return d.out


def dumps(manifest):
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# loading

class Manifest:
    def __init__(self, field, N, data):
        self.field = field
        self.N = N
        self.data = data
        self.objects = {}
        self.kinds = {}
        self.errors = {}

    def names(self):
        return sorted(self.kinds)

    def get(self, name):
        if name not in self.kinds:
            raise ParseError("unresolved reference %r" % name, {"name": name, "known": self.names()})
        if name in self.errors:
            raise self.errors[name]
        return self.objects[name]


def loads(text, field=None, check=True):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("manifest is not valid JSON: %s" % e.msg, {"line": e.lineno, "column": e.colno})
    return load_data(data, field, check)


def load(path, field=None, check=True):
    with open(path) as fh:
        return loads(fh.read(), field, check)


def _need(blk, key, where):
    if key not in blk:
        raise ParseError("%s is missing %r" % (where, key), {"at": where, "key": key})
    return blk[key]


def load_data(data, field=None, check=True):
    """Build every object.  With ``check=False`` validators are not run (see ``validate``)."""
    if not isinstance(data, dict):
        raise ParseError("manifest must be a JSON object", {})
    F = field or parse_field(data.get("field", "Q"))
    N = int(data.get("truncation", 4))
    m = Manifest(F, N, data)
    seen = {}
    for s in SECTIONS:
        for name in (data.get(s) or {}):
            if name in seen:
                raise ParseError("duplicate object name %r" % name, {"name": name, "sections": [seen[name], s]})
            seen[name] = s
            m.kinds[name] = KIND_OF_SECTION[s]

    def ref(name, kind, where):
        if m.kinds.get(name) != kind:
            raise ParseError("%s refers to %r, which is not a known %s" % (where, name, kind),
                             {"at": where, "name": name})
        if name in m.errors:
            raise m.errors[name]
        return m.objects[name]

    for name, blk in (data.get("algebras") or {}).items():
        where = "algebras.%s" % name
        d = int(_need(blk, "dim", where))
        try:
            mult = [[[F(x) for x in cell] for cell in row] for row in _need(blk, "mult", where)]
            unit = [F(x) for x in _need(blk, "unit", where)]
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ParseError("bad scalar in %s: %s" % (where, e), {"at": where})
        _store(m, name, lambda: alg.make_algebra(F, d, mult, unit, name=name, labels=blk.get("labels"),
                                                 check=check))
    for name, blk in (data.get("morphisms") or {}).items():
        where = "morphisms.%s" % name
        A = ref(_need(blk, "source", where), "algebra", where)
        B = ref(_need(blk, "target", where), "algebra", where)
        mat = _mat(F, _need(blk, "matrix", where), (B.dim, A.dim), where)
        _store(m, name, lambda: alg.make_morphism(A, B, mat, blk.get("variant", "homomorphism"), check=check))
    for name, blk in (data.get("corings") or {}).items():
        where = "corings.%s" % name
        R = ref(_need(blk, "base", where), "algebra", where)
        _store(m, name, lambda: _load_coring(F, R, blk, name, where, check))
    for name, blk in (data.get("algebroids") or {}).items():
        where = "algebroids.%s" % name
        H = ref(_need(blk, "total", where), "algebra", where)
        R = ref(_need(blk, "base", where), "algebra", where)
        _store(m, name, lambda: _load_algebroid(m, F, H, R, blk, name, where, check))
    for name, blk in (data.get("module_corings") or {}).items():
        where = "module_corings.%s" % name
        P = ref(_need(blk, "algebroid", where), "para-hopf", where)
        cname = _need(blk, "coring", where)
        C = P.coring if cname == "self" else ref(cname, "coring", where)
        action = [_mat(F, x, (C.dim, C.dim), where) for x in _need(blk, "action", where)]
        _store(m, name, lambda: ab.attach_module_coring(P, C, action, name=name, check=check))
    for name, blk in (data.get("haar") or {}).items():
        where = "haar.%s" % name
        P = ref(_need(blk, "algebroid", where), "para-hopf", where)
        theta = _mat(F, _need(blk, "theta", where), (P.base.dim, P.total.dim), where)
        conv = blk.get("convention", "beta-left")
        _store(m, name, lambda: ab.check_haar(P, theta, conv) if check else ab.HaarSystem(P, theta, None, conv))
    for name, blk in (data.get("coseparators") or {}).items():
        where = "coseparators.%s" % name
        C = ref(_need(blk, "coring", where), "coring", where)
        M = ref(blk["module"], "module-coring", where) if blk.get("module") else None
        delta = _mat(F, _need(blk, "delta", where), (C.base.dim, C.cc.dim), where)
        _store(m, name, lambda: cr.check_coseparator(C, delta, M) if check
               else cr.CoseparatingMap(C, delta), extra={"module": M})
    return m


def _store(m, name, build, extra=None):
    try:
        obj = build()
    except CohocoringError as e:
        m.errors[name] = e
        return
    if extra:
        for k, v in extra.items():
            setattr(obj, "manifest_" + k, v)
    m.objects[name] = obj


def _load_coring(F, R, blk, name, where, check):
    d = int(_need(blk, "dim", where))
    la = [_mat(F, x, (d, d), where) for x in _need(blk, "left_action", where)]
    ra = [_mat(F, x, (d, d), where) for x in _need(blk, "right_action", where)]
    carrier = alg.make_bimodule(d, R, R, la, ra, name=name, check=check)
    counit = _mat(F, _need(blk, "counit", where), (R.dim, d), where)
    C = cr.CoringSpec(R, carrier, None, counit, name=name)
    C.coproduct = _coproduct(F, C.cc, _need(blk, "coproduct", where), d, where)
    if check:
        cr.check_coring(C)
    return C


def _coproduct(F, cc, pairs, d, where):
    if len(pairs) != d:
        raise ParseError("%s: coproduct needs one entry per basis element" % where, {"at": where})
    cols = []
    for i, terms in enumerate(pairs):
        v = {}
        for t in terms:
            a, b, c = t
            for q, x in cc.project((int(a), int(b))).items():
                v[q] = v.get(q, F.zero) + x * F(c)
        cols.append({q: x for q, x in v.items() if x})
    return Matrix(F, cc.dim, d, cols)


def _load_algebroid(m, F, H, R, blk, name, where, check):
    def morph(key, variant):
        val = _need(blk, key, where)
        if isinstance(val, str):
            f = m.get(val)
            return alg.make_morphism(R, H, f.matrix, variant, check=False)
        return alg.make_morphism(R, H, _mat(F, val, (H.dim, R.dim), where), variant, check=False)

    alpha = morph("alpha", "homomorphism")
    beta = morph("beta", "antihomomorphism")
    counit = _mat(F, _need(blk, "counit", where), (R.dim, H.dim), where)
    pairs = _need(blk, "coproduct", where)

    def Delta(i):
        return {(int(a), int(b)): F(c) for a, b, c in pairs[i]}

    if len(pairs) != H.dim:
        raise ParseError("%s: coproduct needs one entry per basis element" % where, {"at": where})
    A = ab.make_algebroid(H, R, alpha, beta, Delta, counit, name=name, check=check)
    if "T" not in blk:
        return A
    T = _mat(F, blk["T"], (H.dim, H.dim), where)
    if not check:
        P = ab.ParaHopfSpec(A, alg.make_morphism(H, H, T, "antihomomorphism", check=False))
        return P
    return ab.make_para_hopf(A, T)


# ---------------------------------------------------------------------------
# comparison (round-trip checks)

def same_algebra(A, B):
    return A.dim == B.dim and A.mult == B.mult and A.unit == B.unit


def same_object(x, y):
    """Matrix-level identity of two objects of the same kind."""
    if isinstance(x, alg.AlgebraSpec):
        return same_algebra(x, y)
    if isinstance(x, ab.ModuleCoringSpec):
        return (same_object(x.acting, y.acting) and same_object(x.coring, y.coring)
                and all(a == b for a, b in zip(x.action, y.action)) and len(x.action) == len(y.action))
    if isinstance(x, ab.AlgebroidSpec):
        ok = (same_algebra(x.total, y.total) and same_algebra(x.base, y.base)
              and x.alpha.matrix == y.alpha.matrix and x.beta.matrix == y.beta.matrix
              and same_object(x.coring, y.coring))
        tx, ty = getattr(x, "T", None), getattr(y, "T", None)
        if (tx is None) != (ty is None):
            return False
        return ok and (tx is None or tx.matrix == ty.matrix)
    if isinstance(x, cr.CoringSpec):
        return (same_algebra(x.base, y.base) and x.dim == y.dim
                and x.carrier.left_action == y.carrier.left_action
                and x.carrier.right_action == y.carrier.right_action
                and x.coproduct == y.coproduct and x.counit == y.counit)
    raise TypeError("cannot compare %r" % (x,))
