"""Corings over finite-dimensional algebras and coseparability.

The coproduct of a coring is stored against the basis of the balanced
square ``C (x)_R C`` (``coring.cc``); its basis elements are pairs of
carrier basis indices, so Sweedler sums are read off directly as lists of
pure tensors.
"""

from itertools import product

from .algebra import (BimoduleSpec, balanced_tensor, opposite, regular_bimodule,
                      restrict_bimodule, tensor_algebra)
from .errors import (CoassocViolation, CoseparabilityCheckFailed, CounitViolation,
                     DimensionMismatch, NotBimoduleMap, NotInjective, NotSplitting)
from .linalg import Matrix, rank, solve_affine, vaddto, vector_to_json
from .spaces import FreeSpace, induced_map_keys


class CoringSpec:
    def __init__(self, base, carrier, coproduct, counit, name="C", cc=None):
        self.base = base
        self.carrier = carrier
        self.coproduct = coproduct
        self.counit = counit
        self.name = name
        self.field = base.field
        self._cc = cc
        self._ccc = None
        self._dkeys = {}
        self.extra = {}

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def cc(self):
        if self._cc is None:
            self._cc = balanced_tensor([self.carrier, self.carrier], self.base)
        return self._cc

    @property
    def ccc(self):
        if self._ccc is None:
            self._ccc = balanced_tensor([self.carrier] * 3, self.base)
        return self._ccc

    def delta_keys(self, i):
        """Delta(c_i) as a dict {(a, b): coef} of pure tensors."""
        d = self._dkeys.get(i)
        if d is None:
            d = self.cc.lift(self.coproduct.columns[i])
            self._dkeys[i] = d
        return d

    def delta_vec(self, v):
        out = {}
        for i, c in v.items():
            for k, a in self.delta_keys(i).items():
                x = out.get(k)
                out[k] = a * c if x is None else x + a * c
        return {k: a for k, a in out.items() if a}

    def eps(self, i):
        return self.counit.columns[i]

    def eps_vec(self, v):
        return self.counit.apply(v)

    def __repr__(self):
        return "CoringSpec(%s over %s, dim=%d)" % (self.name, self.base.name, self.dim)


def _pair_vec(space, u, v):
    """Projection of the pure tensor u (x) v (sparse vectors on the two legs)."""
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            vaddto(out, space.project((i, j)), a * b)
    return out


def make_coring(base, carrier, coproduct, counit, name="C", check=True, cc=None):
    C = CoringSpec(base, carrier, coproduct, counit, name, cc)
    if coproduct.shape != (C.cc.dim, carrier.dim):
        raise DimensionMismatch("coproduct must be %d x %d" % (C.cc.dim, carrier.dim))
    if counit.shape != (base.dim, carrier.dim):
        raise DimensionMismatch("counit must be %d x %d" % (base.dim, carrier.dim))
    if check:
        check_coring(C)
    return C


def check_coring(C):
    F = C.field
    R, M = C.base, C.carrier
    cc = C.cc
    # bimodule maps
    for r in range(R.dim):
        for i in range(M.dim):
            rc = M.left_action[r].columns[i]
            lhs = C.coproduct.apply(rc)
            rhs = cc.project_vec({(k,) + key[1:]: a * b for key, b in C.delta_keys(i).items()
                                  for k, a in M.left_action[r].columns[key[0]].items()})
            if lhs != rhs:
                raise NotBimoduleMap("coproduct is not left R-linear",
                                     {"map": "coproduct", "side": "left", "r": r, "c": i})
            cr = M.right_action[r].columns[i]
            lhs = C.coproduct.apply(cr)
            rhs = cc.project_vec({key[:-1] + (k,): a * b for key, b in C.delta_keys(i).items()
                                  for k, a in M.right_action[r].columns[key[-1]].items()})
            if lhs != rhs:
                raise NotBimoduleMap("coproduct is not right R-linear",
                                     {"map": "coproduct", "side": "right", "r": r, "c": i})
            if C.counit.apply(rc) != R.mul({r: F.one}, C.eps(i)):
                raise NotBimoduleMap("counit is not left R-linear",
                                     {"map": "counit", "side": "left", "r": r, "c": i})
            if C.counit.apply(cr) != R.mul(C.eps(i), {r: F.one}):
                raise NotBimoduleMap("counit is not right R-linear",
                                     {"map": "counit", "side": "right", "r": r, "c": i})
    # coassociativity in C (x)_R C (x)_R C
    ccc = C.ccc
    for i in range(M.dim):
        left, right = {}, {}
        for (a, b), x in C.delta_keys(i).items():
            for (p, q), y in C.delta_keys(a).items():
                left[(p, q, b)] = left.get((p, q, b), 0) + x * y
            for (p, q), y in C.delta_keys(b).items():
                right[(a, p, q)] = right.get((a, p, q), 0) + x * y
        lhs, rhs = ccc.project_vec(left), ccc.project_vec(right)
        if lhs != rhs:
            raise CoassocViolation("coassociativity fails on basis element %d" % i,
                                   {"basis": i, "lhs": vector_to_json(F, lhs),
                                    "rhs": vector_to_json(F, rhs)})
    # counit laws
    for i in range(M.dim):
        one, two = {}, {}
        for (a, b), x in C.delta_keys(i).items():
            vaddto(one, M.act_right({a: F.one}, C.eps(b)), x)
            vaddto(two, M.act_left(C.eps(a), {b: F.one}), x)
        e = {i: F.one}
        if one != e or two != e:
            raise CounitViolation("counit law fails on basis element %d" % i,
                                  {"basis": i, "right_counit": vector_to_json(F, one),
                                   "left_counit": vector_to_json(F, two)})
    return C


# ---------------------------------------------------------------------------
# constructions

def trivial_coring(R):
    """R as a coring over itself: Delta = canonical iso R -> R (x)_R R, eps = id."""
    M = regular_bimodule(R)
    cc = balanced_tensor([M, M], R)
    F = R.field
    u = R.unit
    cop = Matrix(F, cc.dim, R.dim, [_pair_vec(cc, {i: F.one}, u) for i in range(R.dim)])
    return make_coring(R, M, cop, Matrix.identity(F, R.dim), name="triv(%s)" % R.name, cc=cc)


def coalgebra_coring(A, coproduct_pairs, counit_values, name="C"):
    """A k-coalgebra as a coring over k.

    ``coproduct_pairs[i]`` is a dict {(a, b): coef}; ``counit_values[i]`` a scalar.
    """
    from .algebra import ground_field_algebra
    F = A.field if hasattr(A, "field") else A
    dim = len(coproduct_pairs)
    k = ground_field_algebra(F)
    I = Matrix.identity(F, dim)
    M = BimoduleSpec(dim, k, k, [I], [I], name=name)
    cc = balanced_tensor([M, M], k)
    cols = [cc.project_vec({k2: F(c) for k2, c in d.items()}) for d in coproduct_pairs]
    cop = Matrix(F, cc.dim, dim, cols)
    eps = Matrix(F, 1, dim, [{0: F(e)} if F(e) else {} for e in counit_values])
    return make_coring(k, M, cop, eps, name=name, cc=cc)


def group_coalgebra(field, group, name=None):
    """k[G] with group-like basis."""
    n = group.order
    C = coalgebra_coring(field, [{(g, g): 1} for g in range(n)], [1] * n,
                         name=name or "k" + group.name)
    C.extra["group"] = group
    return C


def bimodule_along(A, left=None, right=None, name=None):
    """A as a bimodule over the sources of ``left``/``right`` (morphisms into A)."""
    M = regular_bimodule(A)
    M = restrict_bimodule(M, left, right)
    if name:
        M.name = name
    return M


def sweedler_coring(f):
    """The Sweedler coring A (x)_B A of an injective unital map f: B -> A."""
    B, A = f.source, f.target
    F = A.field
    if rank(f.matrix) != B.dim:
        raise NotInjective("B -> A is not injective", {"rank": rank(f.matrix), "dim_B": B.dim})
    AB = bimodule_along(A, right=f, name=A.name)
    BA = bimodule_along(A, left=f, name=A.name)
    space = balanced_tensor([AB, BA], B)
    space.name = "%s(x)_%s%s" % (A.name, B.name, A.name)
    la = [Matrix(F, space.dim, space.dim,
                 [space.project_vec({(k, j): a for k, a in A.left_mult[r].columns[i].items()})
                  for (i, j) in space.basis]) for r in range(A.dim)]
    ra = [Matrix(F, space.dim, space.dim,
                 [space.project_vec({(i, k): a for k, a in A.right_mult[r].columns[j].items()})
                  for (i, j) in space.basis]) for r in range(A.dim)]
    carrier = BimoduleSpec(space.dim, A, A, la, ra, name=space.name)
    C = CoringSpec(A, carrier, None, None, name="sweedler(%s->%s)" % (B.name, A.name))
    cc = C.cc
    u = A.unit

    def cop_key(key):
        i, j = key
        left = space.project_vec({(i, k): a for k, a in u.items()})
        right = space.project_vec({(k, j): a for k, a in u.items()})
        return {(p, q): a * b for p, a in left.items() for q, b in right.items()}

    def eps_key(key):
        i, j = key
        return {(k,): a for k, a in A.mult[i][j].items()}

    # the carrier legs are A-indices; certify against the two-leg carrier space
    cop = induced_map_keys(cop_key, space, cc, label="sweedler coproduct")
    eps = induced_map_keys(eps_key, space, FreeSpace(F, A.dim, A.name), label="sweedler counit")
    C.coproduct, C.counit = cop, eps
    C.extra.update({"sweedler_of": f, "legs": space})
    check_coring(C)
    return C


def matrix_coring(R, n):
    """The n x n matrix coring over R: free bimodule on e_ij, Delta e_ij = sum_k e_ik (x) e_kj."""
    F = R.field
    d = R.dim
    N = n * n * d
    la = [Matrix(F, N, N, [{(e * d + k): a for k, a in R.mult[r][x].items()}
                           for e in range(n * n) for x in range(d)]) for r in range(d)]
    ra = [Matrix(F, N, N, [{(e * d + k): a for k, a in R.mult[x][r].items()}
                           for e in range(n * n) for x in range(d)]) for r in range(d)]
    carrier = BimoduleSpec(N, R, R, la, ra, name="M%d(%s)" % (n, R.name))
    C = CoringSpec(R, carrier, None, None, name="matrix%d(%s)" % (n, R.name))
    cc = C.cc
    cols, eps = [], []
    u = R.unit
    for e in range(n * n):
        i, j = divmod(e, n)
        for x in range(d):
            vec = {}
            for k in range(n):
                left = {(i * n + k) * d + p: a for p, a in u.items()}
                right = {(k * n + j) * d + x: F.one}
                vaddto(vec, _pair_vec(cc, left, right))
            cols.append(vec)
            eps.append({x: F.one} if i == j else {})
    C.coproduct = Matrix(F, cc.dim, N, cols)
    C.counit = Matrix(F, d, N, eps)
    check_coring(C)
    return C


def tensor_coring(C, D):
    """C (x) D over R (x) S with factorwise structure."""
    F = C.field
    R, S = C.base, D.base
    RS = tensor_algebra(R, S)
    dC, dD = C.dim, D.dim
    N = dC * dD
    MC, MD = C.carrier, D.carrier
    la, ra = [], []
    for r in range(R.dim):
        for s in range(S.dim):
            la.append(Matrix(F, N, N, [{p * dD + q: a * b
                                        for p, a in MC.left_action[r].columns[i].items()
                                        for q, b in MD.left_action[s].columns[j].items()}
                                       for i in range(dC) for j in range(dD)]))
            ra.append(Matrix(F, N, N, [{p * dD + q: a * b
                                        for p, a in MC.right_action[r].columns[i].items()
                                        for q, b in MD.right_action[s].columns[j].items()}
                                       for i in range(dC) for j in range(dD)]))
    carrier = BimoduleSpec(N, RS, RS, la, ra, name="%s(x)%s" % (MC.name, MD.name))
    T = CoringSpec(RS, carrier, None, None, name="%s(x)%s" % (C.name, D.name))
    cc = T.cc
    cols, eps = [], []
    for i in range(dC):
        for j in range(dD):
            vec = {}
            for (a, b), x in C.delta_keys(i).items():
                for (p, q), y in D.delta_keys(j).items():
                    vaddto(vec, cc.project((a * dD + p, b * dD + q)), x * y)
            cols.append(vec)
            eps.append({p * S.dim + q: a * b for p, a in C.eps(i).items() for q, b in D.eps(j).items()})
    T.coproduct = Matrix(F, cc.dim, N, cols)
    T.counit = Matrix(F, RS.dim, N, eps)
    check_coring(T)
    return T


def cop_coring(C):
    """The co-opposite coring over R^op: swapped actions and flipped coproduct."""
    F = C.field
    Rop = opposite(C.base)
    if C.extra.get("cop_of") is not None:
        Rop = C.extra["cop_of"].base
    M = C.carrier
    carrier = BimoduleSpec(M.dim, Rop, Rop, M.right_action, M.left_action, name=M.name + "^cop")
    T = CoringSpec(Rop, carrier, None, None, name=C.name + "^cop")
    cc = T.cc
    cols = [cc.project_vec({(b, a): x for (a, b), x in C.delta_keys(i).items()}) for i in range(M.dim)]
    T.coproduct = Matrix(F, cc.dim, M.dim, cols)
    T.counit = C.counit
    T.extra["cop_of"] = C
    check_coring(T)
    return T


def enveloping_coring(C):
    E = tensor_coring(C, cop_coring(C))
    E.name = C.name + "^e"
    return E


# ---------------------------------------------------------------------------
# coseparability

class CoseparatingMap:
    """delta: C (x)_R C -> R satisfying the two coseparability equations."""

    def __init__(self, coring, delta, solution_dim=None, diagnostics=None):
        self.coring = coring
        self.delta = delta
        self.solution_dim = solution_dim
        self.diagnostics = diagnostics or {}

    def value_keys(self, a, b):
        """delta(c_a (x) c_b) as a vector in R."""
        return self.delta.apply(self.coring.cc.project((a, b)))


def coseparability_defects(C, delta, module=None):
    """Return a list of (condition, witness) failures of the coseparability equations."""
    F = C.field
    M, R, cc = C.carrier, C.base, C.cc
    out = []
    if delta.shape != (R.dim, cc.dim):
        return [("shape", {"expected": [R.dim, cc.dim], "got": list(delta.shape)})]
    dd = delta @ C.coproduct
    if dd != C.counit:
        j, diff = dd.first_difference(C.counit)
        out.append(("delta o Delta = eps", {"basis": j, "difference": vector_to_json(F, diff)}))
    for q, (c, d) in enumerate(cc.basis):
        lhs, rhs = {}, {}
        for (a, b), x in C.delta_keys(c).items():
            vaddto(lhs, M.act_right({a: F.one}, delta.apply(cc.project((b, d)))), x)
        for (e, f), x in C.delta_keys(d).items():
            vaddto(rhs, M.act_left(delta.apply(cc.project((c, e))), {f: F.one}), x)
        if lhs != rhs:
            out.append(("(id (x) delta)(Delta (x) id) = (delta (x) id)(id (x) Delta)",
                        {"basis": [c, d], "lhs": vector_to_json(F, lhs), "rhs": vector_to_json(F, rhs)}))
            break
    if module is not None:
        for h in module.acting_generators():
            act_R = module.base_action_matrix(h)
            for q, key in enumerate(cc.basis):
                lhs = delta.apply(module.act_cc(h, key))
                rhs = act_R.apply(delta.columns[q])
                if lhs != rhs:
                    out.append(("H-linearity", {"h": h, "basis": list(key),
                                                "lhs": vector_to_json(F, lhs),
                                                "rhs": vector_to_json(F, rhs)}))
                    return out
    return out


def bimodule_diagnostic(C, delta):
    """Whether delta is additionally an (R, R)-bimodule map (reported, not required)."""
    F = C.field
    R, cc = C.base, C.cc
    for r in range(R.dim):
        for q, (a, b) in enumerate(cc.basis):
            left = cc.project_vec({(k, b): x for k, x in C.carrier.left_action[r].columns[a].items()})
            if delta.apply(left) != R.mul({r: F.one}, delta.columns[q]):
                return False
            right = cc.project_vec({(a, k): x for k, x in C.carrier.right_action[r].columns[b].items()})
            if delta.apply(right) != R.mul(delta.columns[q], {r: F.one}):
                return False
    return True


def check_coseparator(C, delta, module=None, solution_dim=None):
    bad = coseparability_defects(C, delta, module)
    if bad:
        cond, wit = bad[0]
        raise CoseparabilityCheckFailed("coseparability fails: %s" % cond, dict(wit, condition=cond))
    return CoseparatingMap(C, delta, solution_dim, {"bimodule_map": bimodule_diagnostic(C, delta)})


def find_coseparating(C, module=None):
    """Solve the coseparability equations for delta; one deterministic solution or None."""
    F = C.field
    M, R, cc = C.carrier, C.base, C.cc
    dR, dcc = R.dim, cc.dim
    nv = dR * dcc

    def var(r, q):
        return q * dR + r

    eqs = []
    # delta Delta = eps
    for i in range(M.dim):
        d = C.coproduct.columns[i]
        e = C.eps(i)
        for r in range(dR):
            eqs.append(({var(r, q): x for q, x in d.items()}, e.get(r, 0)))
    # second condition, coordinatewise in C
    right_by_r = [M.right_action[r] for r in range(dR)]
    left_by_r = [M.left_action[r] for r in range(dR)]
    for c, d in cc.basis:
        rows = {}
        for (a, b), x in C.delta_keys(c).items():
            for q, y in cc.project((b, d)).items():
                for r in range(dR):
                    for m, z in right_by_r[r].columns[a].items():
                        rows.setdefault(m, {})
                        vaddto(rows[m], {var(r, q): x * y * z})
        for (e, f), x in C.delta_keys(d).items():
            for q, y in cc.project((c, e)).items():
                for r in range(dR):
                    for m, z in left_by_r[r].columns[f].items():
                        rows.setdefault(m, {})
                        vaddto(rows[m], {var(r, q): -x * y * z})
        for m in sorted(rows):
            if rows[m]:
                eqs.append((rows[m], 0))
    if module is not None:
        for h in module.acting_generators():
            act_R = module.base_action_matrix(h)
            for q, key in enumerate(cc.basis):
                img = module.act_cc(h, key)
                for r in range(dR):
                    row = {var(r, p): x for p, x in img.items()}
                    for s in range(dR):
                        coef = act_R.columns[s].get(r)
                        if coef:
                            vaddto(row, {var(s, q): -coef})
                    if row:
                        eqs.append((row, 0))
    sol = solve_affine(F, eqs, nv)
    if sol is None:
        return None
    particular, kern = sol
    cols = [{r: particular[var(r, q)] for r in range(dR) if var(r, q) in particular} for q in range(dcc)]
    delta = Matrix(F, dR, dcc, cols)
    return check_coseparator(C, delta, module, solution_dim=len(kern))


def sweedler_identification(C):
    """The iso C (x)_A C -> A (x)_B A (x)_B A, (a(x)a') (x) (a''(x)a''') -> a (x) a'a'' (x) a'''."""
    f = C.extra["sweedler_of"]
    A, B = f.target, f.source
    F = A.field
    AB = bimodule_along(A, right=f)
    BB = bimodule_along(A, left=f, right=f)
    BA = bimodule_along(A, left=f)
    triple = balanced_tensor([AB, BB, BA], B)
    cbasis = C.extra["legs"].basis

    def iso_key(key):
        (i, j), (k, l) = cbasis[key[0]], cbasis[key[1]]
        return {(i, m, l): a for m, a in A.mult[j][k].items()}

    iso = induced_map_keys(iso_key, C.cc, triple, label="sweedler identification")
    return iso, triple


def split_extension_coseparator(C, E):
    """delta((a(x)a')(x)(a''(x)a''')) = a E(a'a'') a''' transported through the identification."""
    f = C.extra.get("sweedler_of")
    if f is None:
        raise NotSplitting("coring is not a Sweedler coring", {})
    A, B = f.target, f.source
    F = A.field
    if E.shape != (B.dim, A.dim):
        raise DimensionMismatch("E must be %d x %d" % (B.dim, A.dim))
    if E.apply(A.unit) != B.unit:
        raise NotSplitting("E(1) != 1", {"E(1)": vector_to_json(F, E.apply(A.unit))})
    for b, a in product(range(B.dim), range(A.dim)):
        fb = f.image(b)
        if E.apply(A.mul(fb, {a: F.one})) != B.mul({b: F.one}, E.columns[a]):
            raise NotSplitting("E is not left B-linear", {"b": b, "a": a})
        if E.apply(A.mul({a: F.one}, fb)) != B.mul(E.columns[a], {b: F.one}):
            raise NotSplitting("E is not right B-linear", {"b": b, "a": a})
    iso, triple = sweedler_identification(C)
    if rank(iso) != iso.rows or iso.rows != iso.cols:
        raise CoseparabilityCheckFailed("identification is not invertible", {"rank": rank(iso)})

    def d3(key):
        i, m, l = key
        x = A.mul(A.mul({i: F.one}, f(E.columns[m])), {l: F.one})
        return {(k,): a for k, a in x.items()}

    d3m = induced_map_keys(d3, triple, FreeSpace(F, A.dim, A.name), label="a (x) x (x) a''' -> a E(x) a'''")
    delta = d3m @ iso
    cs = check_coseparator(C, delta)
    cs.diagnostics["E"] = [vector_to_json(F, c) for c in E.columns]
    return cs
