"""Tensor-leg spaces realised as iterated quotients.

A *space* is a finite-dimensional quotient of a tensor product of "legs".
Elements of the ambient are addressed by *keys*: tuples of leg basis
indices.  Every space exposes

* ``basis``: one key per quotient basis vector (always a pure tensor),
* ``project(key)``: the image of an ambient pure tensor in quotient
  coordinates,
* an indexed family of *kernel generators* (ambient vectors spanning the
  kernel of the projection), used to certify that a map defined on keys
  descends to the quotient.

Building one quotient of the full k-tensor ambient is infeasible beyond
small examples (the ambient grows like (dim C)^(n+1)), so
``TensorPair`` quotients (left quotient) (x) (right quotient) by the
balancing relations for a set of algebra generators.  The result is the
same vector space; its basis is still the leftmost-pivot complement of
each stage.
"""

import random

from .errors import WellDefinednessViolation
from .linalg import Echelon, Matrix, vaddto

DEFAULT_BUDGET = 4000


class Space:
    field = None
    dim = 0
    arity = 1
    basis = ()
    name = "V"

    def project(self, key):
        raise NotImplementedError

    def project_vec(self, vec):
        """Project a dict ``{key: coef}``."""
        out = {}
        for key, c in vec.items():
            if c:
                vaddto(out, self.project(key), c)
        return out

    def lift(self, q):
        """Quotient vector -> dict of basis keys (the section)."""
        basis = self.basis
        return {basis[i]: a for i, a in q.items()}

    def n_kernel_gens(self):
        return 0

    def kernel_gen(self, i):
        raise IndexError(i)

    def kernel_blocks(self):
        """List of (label, count) describing the generator family in order."""
        return []

    def __repr__(self):
        return "%s(%s, dim=%d)" % (type(self).__name__, self.name, self.dim)


class FreeSpace(Space):
    """A single leg with no relations."""

    def __init__(self, field, dim, name="V"):
        self.field = field
        self.dim = dim
        self.arity = 1
        self.basis = [(i,) for i in range(dim)]
        self.name = name
        self._one = field.one

    def project(self, key):
        return {key[0]: self._one}


class TensorPair(Space):
    """(left) (x)_G (right): quotient of left (x) right by

        x.g (x) y  -  x (x) g.y     for x, y basis keys and g in ``gens``.

    ``act_right(left_key, g)`` and ``act_left(g, right_key)`` return dicts of
    ambient keys (they need not be reduced).
    """

    def __init__(self, left, right, gens, act_right, act_left, name="(x)"):
        self.left = left
        self.right = right
        self.gens = list(gens)
        self.act_right = act_right
        self.act_left = act_left
        self.field = left.field
        self.arity = left.arity + right.arity
        self.name = name
        F = self.field
        dL, dR = left.dim, right.dim
        self._dR = dR
        ech = Echelon(F)
        for li in range(dL):
            lk = left.basis[li]
            for g in self.gens:
                xg = left.project_vec(act_right(lk, g))
                for ri in range(dR):
                    rk = right.basis[ri]
                    gy = right.project_vec(act_left(g, rk))
                    rel = {}
                    for a, c in xg.items():
                        rel[a * dR + ri] = c
                    for b, c in gy.items():
                        k = li * dR + b
                        x = rel.get(k)
                        x = -c if x is None else x - c
                        if x:
                            rel[k] = x
                        else:
                            del rel[k]
                    if rel:
                        ech.insert(rel)
        self._ech = ech
        piv = ech.pivots
        self.free = [j for j in range(dL * dR) if j not in piv]
        self.index = {j: q for q, j in enumerate(self.free)}
        self.dim = len(self.free)
        self.basis = [left.basis[j // dR] + right.basis[j % dR] for j in self.free]
        self._amb_cache = {}
        self._key_cache = {}

    def _project_amb(self, j):
        c = self._amb_cache.get(j)
        if c is None:
            idx = self.index
            q = idx.get(j)
            if q is not None:
                c = {q: self.field.one}
            else:
                r = self._ech.reduce({j: self.field.one})
                c = {idx[k]: a for k, a in r.items()}
            self._amb_cache[j] = c
        return c

    def project(self, key):
        c = self._key_cache.get(key)
        if c is None:
            aL = self.left.arity
            pl = self.left.project(key[:aL])
            pr = self.right.project(key[aL:])
            dR = self._dR
            c = {}
            for a, x in pl.items():
                for b, y in pr.items():
                    vaddto(c, self._project_amb(a * dR + b), x * y)
            if len(self._key_cache) < 2_000_000:
                self._key_cache[key] = c
        return c

    # kernel generators ---------------------------------------------------
    def kernel_blocks(self):
        nL, nR = self.left.n_kernel_gens(), self.right.n_kernel_gens()
        return [("left-kernel x right-basis", nL * self.right.dim),
                ("left-basis x right-kernel", self.left.dim * nR),
                ("left-kernel x right-kernel", nL * nR),
                ("balancing relations", self.left.dim * len(self.gens) * self.right.dim)]

    def n_kernel_gens(self):
        return sum(n for _, n in self.kernel_blocks())

    def kernel_gen(self, i):
        blocks = self.kernel_blocks()
        b = 0
        while i >= blocks[b][1]:
            i -= blocks[b][1]
            b += 1
        L, R = self.left, self.right
        if b == 0:
            wl = L.kernel_gen(i // R.dim)
            rk = R.basis[i % R.dim]
            return {k + rk: c for k, c in wl.items()}
        if b == 1:
            lk = L.basis[i // R.n_kernel_gens()]
            wr = R.kernel_gen(i % R.n_kernel_gens())
            return {lk + k: c for k, c in wr.items()}
        if b == 2:
            nR = R.n_kernel_gens()
            wl = L.kernel_gen(i // nR)
            wr = R.kernel_gen(i % nR)
            return _outer(wl, wr)
        ng = len(self.gens)
        li, rest = divmod(i, ng * R.dim)
        gi, ri = divmod(rest, R.dim)
        g = self.gens[gi]
        lk, rk = L.basis[li], R.basis[ri]
        out = {}
        for k, c in self.act_right(lk, g).items():
            out[k + rk] = out.get(k + rk, 0) + c
        for k, c in self.act_left(g, rk).items():
            out[lk + k] = out.get(lk + k, 0) - c
        return {k: c for k, c in out.items() if c}


def _outer(u, v):
    out = {}
    for a, x in u.items():
        for b, y in v.items():
            out[a + b] = x * y
    return out


def generator_sample(space, budget=None, seed=0):
    """Indices of kernel generators to check, and whether the check is exhaustive.

    Each block of the generator family is checked exhaustively when it fits
    the budget share; otherwise a seeded uniform sample is taken from it.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    blocks = space.kernel_blocks()
    total = sum(n for _, n in blocks)
    if total <= budget:
        return list(range(total)), True
    rng = random.Random(seed)
    nonempty = [n for _, n in blocks if n]
    share = max(1, budget // max(1, len(nonempty)))
    out = []
    start = 0
    for _, n in blocks:
        if n <= share:
            out.extend(range(start, start + n))
        elif n:
            out.extend(start + x for x in sorted(rng.sample(range(n), share)))
        start += n
    return out, False


class Certificate:
    """Record of a well-definedness check for one induced map."""

    def __init__(self, label, generators, checked, exhaustive):
        self.label = label
        self.generators = generators
        self.checked = checked
        self.exhaustive = exhaustive

    def as_dict(self):
        return {"map": self.label, "kernel_generators": self.generators,
                "checked": self.checked, "mode": "exhaustive" if self.exhaustive else "sampled"}


def key_json(vec, field):
    return [[list(k), field.to_str(c)] for k, c in sorted(vec.items())]


def certify_keys(f, src, tgt, budget=None, seed=0, label="map"):
    """Check that f (key -> dict of target keys) kills src kernel generators modulo tgt."""
    idx, exhaustive = generator_sample(src, budget, seed)
    for i in idx:
        w = src.kernel_gen(i)
        img = {}
        for k, c in w.items():
            for kk, a in f(k).items():
                x = img.get(kk)
                img[kk] = a * c if x is None else x + a * c
        q = tgt.project_vec(img)
        if q:
            raise WellDefinednessViolation(
                "%s is not well defined on %s" % (label, src.name),
                {"map": label, "relation": key_json(w, src.field),
                 "image": {str(k): src.field.to_str(a) for k, a in sorted(q.items())}})
    return Certificate(label, src.n_kernel_gens(), len(idx), exhaustive)


def induced_map_keys(f, src, tgt, certify=True, budget=None, seed=0, label="map", certificates=None):
    """Matrix of the map induced by f on quotient bases, after certification."""
    if certify:
        cert = certify_keys(f, src, tgt, budget, seed, label)
        if certificates is not None:
            certificates.append(cert)
    cols = [tgt.project_vec(f(k)) for k in src.basis]
    return Matrix(src.field, tgt.dim, src.dim, cols)
