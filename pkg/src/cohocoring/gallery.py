"""Built-in example objects, addressed by stable names.

Names carry their kind:

* ``alg:<A>`` algebras (k, D, M2, kZ2, kZ3, kS3);
* ``coalg:<C>`` coalgebras over k (k and the group coalgebras);
* ``<corings>``: ``trivial-coring:D``, ``sweedler-coring:k-><A>``, ``matrix-coring:2x<A>``;
* para-Hopf algebroids: ``k``, ``kZ2``, ``kZ3``, ``kS3`` (Hopf algebras over k),
  ``sweedler:k-><A>``, ``conj-crossed:<G>``;
* module corings: ``self:<para-Hopf name>``, ``env:<coring name>`` and
  ``square:<para-Hopf name>`` (action on the Sweedler coring R (x) R, only where it is valid).
"""

from functools import lru_cache

from . import algebra as alg
from . import algebroid as ab
from . import coring as cr
from .errors import ParseError
from .linalg import QQ, Matrix

ALGEBRAS = ["k", "D", "M2", "kZ2", "kZ3", "kS3"]
GROUPS = ["Z2", "Z3", "S3"]
# para-Hopf algebroids whose action on the Sweedler coring R (x) R passes the module-coring gate
SQUARE_ACTING = ["k", "kZ2", "kZ3", "kS3", "sweedler:k->k"]


def _group(name):
    return {"Z2": alg.cyclic_group(2), "Z3": alg.cyclic_group(3), "S3": alg.symmetric_group_3()}[name]


def make_algebra(name, field=QQ):
    if name == "k":
        return alg.ground_field_algebra(field)
    if name == "D":
        return alg.dual_numbers(field)
    if name == "M2":
        return alg.matrix_algebra(field, 2)
    if name.startswith("k") and name[1:] in GROUPS:
        return alg.group_algebra(field, _group(name[1:]))
    raise ParseError("unknown algebra %r" % name, {"name": name})


def trace_expectation(A):
    """E = (1/n) trace on M_n, as a k-valued map; the bimodule splitting of k -> M_n."""
    F = A.field
    n = int(round(A.dim ** 0.5))
    inv = F(1) / F(n)
    return Matrix(F, 1, A.dim, [{0: inv} if i // n == i % n else {} for i in range(A.dim)])


def names():
    out = ["alg:%s" % a for a in ALGEBRAS]
    out += ["coalg:k"] + ["coalg:k%s" % g for g in GROUPS]
    out += ["trivial-coring:k", "trivial-coring:D", "sweedler-coring:k->D", "sweedler-coring:k->M2", "sweedler-coring:k->kZ2",
            "matrix-coring:2xk", "matrix-coring:2xD"]
    out += ["k"] + ["k%s" % g for g in GROUPS]
    out += ["sweedler:k->%s" % a for a in ("k", "D", "M2", "kZ2")]
    out += ["conj-crossed:k%s" % g for g in GROUPS]
    return out


def para_hopf_names():
    return [n for n in names() if kind_of(n) == "para-hopf"]


def coring_names():
    return [n for n in names() if kind_of(n) in ("coring", "coalgebra")]


def module_coring_names():
    return (["self:%s" % n for n in para_hopf_names()] + ["env:%s" % n for n in coring_names()]
            + ["square:%s" % n for n in SQUARE_ACTING])


def kind_of(name):
    if name.startswith("alg:"):
        return "algebra"
    if name.startswith("coalg:"):
        return "coalgebra"
    if name.split(":")[0] in ("trivial-coring", "sweedler-coring", "matrix-coring"):
        return "coring"
    if name.split(":")[0] in ("self", "env", "square"):
        return "module-coring"
    if name in ("k",) or name.split(":")[0] in ("sweedler", "conj-crossed") or (
            name.startswith("k") and name[1:] in GROUPS):
        return "para-hopf"
    raise ParseError("unknown gallery object %r" % name, {"name": name})


def get(name, field=QQ):
    return _get(name, field)


@lru_cache(maxsize=None)
def _get(name, field):
    kind = kind_of(name)
    if kind == "algebra":
        return make_algebra(name[4:], field)
    if kind == "coalgebra":
        g = name[6:]
        if g == "k":
            return cr.trivial_coring(alg.ground_field_algebra(field))
        return cr.group_coalgebra(field, _group(g[1:]))
    if kind == "coring":
        head, arg = name.split(":", 1)
        if head == "trivial-coring":
            return cr.trivial_coring(make_algebra(arg, field))
        if head == "sweedler-coring":
            return cr.sweedler_coring(alg.unit_map(make_algebra(arg.split("->")[1], field)))
        return cr.matrix_coring(make_algebra(arg.split("x")[1], field), int(arg.split("x")[0]))
    if kind == "module-coring":
        head, arg = name.split(":", 1)
        if head == "self":
            return ab.self_module_coring(_get(arg, field))
        if head == "square":
            return ab.sweedler_square_module_coring(_get(arg, field))
        return ab.enveloping_action_module(_get(arg, field))
    # para-Hopf
    if name == "k" or (name.startswith("k") and name[1:] in GROUPS):
        if name == "k":
            P = ab.hopf_para_hopf(ab.hopf_group_algebra(field, alg.cyclic_group(1)))
            P.name = P.total.name = "k"
            return P
        return ab.hopf_para_hopf(ab.hopf_group_algebra(field, _group(name[1:])))
    head, arg = name.split(":", 1)
    if head == "sweedler":
        return ab.sweedler_bialgebroid(alg.unit_map(make_algebra(arg.split("->")[1], field)))
    Hf = ab.hopf_group_algebra(field, _group(arg[1:]))
    return ab.crossed_product_para_hopf(*ab.conjugation_example(Hf), name=name)


def coseparator_for(name, field=QQ):
    """A coseparating map for a gallery coring: the trace splitting for k -> M_n, else solved for."""
    C = get(name, field)
    if name == "sweedler-coring:k->M2":
        return cr.split_extension_coseparator(C, trace_expectation(C.extra["sweedler_of"].target))
    return cr.find_coseparating(C)
