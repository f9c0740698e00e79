"""Hochschild, cyclic and periodic (co)homology of (co)cyclic matrix data.

Cohomology is computed for cocyclic objects and homology for cyclic ones;
asking for the other direction works on the linear dual (all matrices
transposed).  Signs live only here: b = sum (-1)^i (co)faces and
lambda_n = (-1)^n tau_n.
"""

from .cyclic import transpose_object
from .errors import BadCharacteristic, HomotopyViolation, NotAComplex
from .linalg import Matrix, kernel_basis, rank, vaddto
from .spaces import induced_map_keys

COHOMOLOGY = "cohomology"
HOMOLOGY = "homology"


class ComplexReport:
    def __init__(self, theory, direction, dims, method, name, edge=None, stabilized=None, extra=None):
        self.theory = theory
        self.direction = direction
        self.dims = dims
        self.method = method
        self.name = name
        self.edge = edge
        self.stabilized = stabilized
        self.extra = extra or {}

    def as_dict(self):
        d = {"object": self.name, "theory": self.theory, "direction": self.direction,
             "method": self.method, "degrees": list(range(len(self.dims))), "dims": list(self.dims)}
        if self.edge is not None:
            d["edge_truncated_degree"] = self.edge
        if self.stabilized is not None:
            d["stabilized"] = self.stabilized
        d.update(self.extra)
        return d

    def __repr__(self):
        return "ComplexReport(%s %s %s: %s)" % (self.theory, self.direction, self.name, self.dims)


def _oriented(X, direction):
    if direction is None:
        direction = COHOMOLOGY if X.kind == "cocyclic" else HOMOLOGY
    if direction not in (COHOMOLOGY, HOMOLOGY):
        raise ValueError("direction must be %r or %r" % (COHOMOLOGY, HOMOLOGY))
    want = "cocyclic" if direction == COHOMOLOGY else "cyclic"
    if X.kind != want:
        X = transpose_object(X)
    return X, direction


def _sum(F, mats, signs):
    out = None
    for m, s in zip(mats, signs):
        term = m if s == 1 else m.scale(F(s))
        out = term if out is None else out + term
    return out


def _lam(X, n):
    F = X.field
    tau = X.tau[n] if X.kind == "cocyclic" else X.t[n]
    return tau if n % 2 == 0 else -tau


def b_matrices(X):
    """b_n for every degree where it exists, keyed by source degree."""
    F = X.field
    out = {}
    if X.kind == "cocyclic":
        for n in range(X.top):
            out[n] = _sum(F, X.cofaces[n], [(-1) ** i for i in range(n + 2)])
    else:
        for n in range(1, X.top + 1):
            out[n] = _sum(F, X.faces[n], [(-1) ** i for i in range(n + 1)])
    return out


def _check_complex(X, b):
    for n, m in b.items():
        nxt = n + 1 if X.kind == "cocyclic" else n - 1
        if nxt in b:
            sq = b[nxt] @ m
            if not sq.is_zero():
                j, diff = sq.first_difference(Matrix.zero(X.field, *sq.shape))
                raise NotAComplex("b o b != 0 starting in degree %d" % n,
                                  {"degree": n, "basis_vector": j,
                                   "value": {str(k): str(v) for k, v in sorted(diff.items())}})


def _report_degrees(X, direction):
    return X.N if direction == COHOMOLOGY else X.N + 1


def hochschild(X, direction=None):
    X, direction = _oriented(X, direction)
    b = b_matrices(X)
    _check_complex(X, b)
    dims = [s.dim for s in X.spaces]
    ranks = {n: rank(m) for n, m in b.items()}
    out = []
    for n in range(_report_degrees(X, direction)):
        if direction == COHOMOLOGY:
            out.append(dims[n] - ranks.get(n, 0) - ranks.get(n - 1, 0))
        else:
            out.append(dims[n] - ranks.get(n, 0) - ranks.get(n + 1, 0))
    return ComplexReport("HH", direction, out, "b-complex", X.name, edge=len(out) - 1)


def _check_char(X):
    p = X.field.characteristic
    if p and p <= 2 * (X.N + 1):
        raise BadCharacteristic("cyclic (co)homology needs characteristic 0 or p > 2(N+1) = %d"
                                % (2 * (X.N + 1)), {"p": p, "N": X.N})


def cyclic_invariant(X, direction=None):
    """HC through the lambda-invariant cochains (cohomology) or lambda-coinvariant chains (homology)."""
    _check_char(X)
    X, direction = _oriented(X, direction)
    F = X.field
    b = b_matrices(X)
    _check_complex(X, b)
    top = X.top
    one_minus = {}
    for n in range(top + 1):
        one_minus[n] = Matrix.identity(F, X.spaces[n].dim) - _lam(X, n)
    out = []
    if direction == COHOMOLOGY:
        V = {n: kernel_basis(one_minus[n]) for n in range(top + 1)}          # rows span ker(1 - lambda)
        Vmat = {n: V[n].transpose() for n in V}
        dimV = {n: V[n].rows for n in V}
        rk = {n: rank(b[n] @ Vmat[n]) if dimV[n] else 0 for n in b}
        for n in range(_report_degrees(X, direction)):
            out.append(dimV[n] - rk.get(n, 0) - rk.get(n - 1, 0))
    else:
        from .linalg import induced_map, quotient_from_vectors
        Q = {n: quotient_from_vectors(F, X.spaces[n].dim, one_minus[n].columns) for n in range(top + 1)}
        bb = {n: induced_map(b[n], Q[n], Q[n - 1]) for n in b}
        rk = {n: rank(m) for n, m in bb.items()}
        for n in range(_report_degrees(X, direction)):
            out.append(Q[n].dim - rk.get(n, 0) - rk.get(n + 1, 0))
    return ComplexReport("HC", direction, out, "invariant-subcomplex", X.name, edge=len(out) - 1)


def _norm(X, n):
    F = X.field
    lam = _lam(X, n)
    acc = Matrix.identity(F, X.spaces[n].dim)
    p = acc
    for _ in range(n):
        p = lam @ p
        acc = acc + p
    return acc


def connes_B(X):
    """B in every degree where it exists, keyed by source degree.

    Homology: B_n = (1 - lambda) s N : C_n -> C_(n+1), with s = t s_n.
    Cohomology: B_n = N sigma (1 - lambda) : C^n -> C^(n-1), with sigma = tau sigma_(n-1).
    """
    F = X.field
    out = {}
    if X.kind == "cyclic":
        for n in range(X.top):
            s = X.t[n + 1] @ X.degs[n][n]
            I = Matrix.identity(F, X.spaces[n + 1].dim)
            out[n] = (I - _lam(X, n + 1)) @ s @ _norm(X, n)
    else:
        for n in range(1, X.top + 1):
            sig = X.tau[n - 1] @ X.codegs[n][n - 1]
            I = Matrix.identity(F, X.spaces[n].dim)
            out[n] = _norm(X, n - 1) @ sig @ (I - _lam(X, n))
    return out


def _check_mixed(X, b, B):
    """B o B = 0 and bB + Bb = 0 wherever all the terms exist."""
    F = X.field
    for n, m in B.items():
        up = n + 1 if X.kind == "cyclic" else n - 1
        if up in B and not (B[up] @ m).is_zero():
            raise NotAComplex("B o B != 0 in degree %d" % n, {"degree": n})
    # in degree 0 one of the two terms is a map through the zero space; in
    # the top degree the identity cannot be formed
    for n in range(X.top):
        if X.kind == "cyclic":
            terms = [(b.get(n + 1), B.get(n)), (B.get(n - 1), b.get(n))]
        else:
            terms = [(b.get(n - 1), B.get(n)), (B.get(n + 1), b.get(n))]
        present = [(x, y) for x, y in terms if x is not None and y is not None]
        total = None
        for x, y in present:
            total = x @ y if total is None else total + x @ y
        if not total.is_zero():
            raise NotAComplex("bB + Bb != 0 in degree %d" % n, {"degree": n})


def cyclic_bicomplex(X, direction=None):
    """HC as the (co)homology of the total complex of the (b, B) bicomplex."""
    _check_char(X)
    X, direction = _oriented(X, direction)
    F = X.field
    b = b_matrices(X)
    _check_complex(X, b)
    B = connes_B(X)
    _check_mixed(X, b, B)
    dims = [s.dim for s in X.spaces]
    top = X.top

    def comps(n):
        return [m for m in range(n, -1, -2)]

    def offsets(n):
        off, o = {}, 0
        for m in comps(n):
            off[m] = o
            o += dims[m]
        return off, o

    def D(n):
        """Total differential out of Tot_n (homology: to Tot_(n-1); cohomology: to Tot_(n+1))."""
        src_off, src_dim = offsets(n)
        tgt = n - 1 if direction == HOMOLOGY else n + 1
        tgt_off, tgt_dim = offsets(tgt) if tgt >= 0 else ({}, 0)
        cols = []
        for m in comps(n):
            for j in range(dims[m]):
                v = {}
                if direction == HOMOLOGY:
                    if m >= 1:
                        vaddto(v, {tgt_off[m - 1] + k: a for k, a in b[m].columns[j].items()})
                    if m + 1 <= tgt and (m in B):
                        vaddto(v, {tgt_off[m + 1] + k: a for k, a in B[m].columns[j].items()})
                else:
                    vaddto(v, {tgt_off[m + 1] + k: a for k, a in b[m].columns[j].items()})
                    if m >= 1:
                        vaddto(v, {tgt_off[m - 1] + k: a for k, a in B[m].columns[j].items()})
                cols.append(v)
        return Matrix(F, tgt_dim, src_dim, cols), src_dim

    out = []
    ndeg = _report_degrees(X, direction)
    if direction == HOMOLOGY:
        mats = {n: D(n) for n in range(0, ndeg + 1)}
        rk = {n: rank(m) for n, (m, _) in mats.items()}
        for n in range(ndeg):
            out.append(mats[n][1] - rk[n] - rk[n + 1])
    else:
        mats = {n: D(n) for n in range(0, ndeg)}
        rk = {n: rank(m) for n, (m, _) in mats.items()}
        for n in range(ndeg):
            out.append(mats[n][1] - rk[n] - rk.get(n - 1, 0))
    return ComplexReport("HC", direction, out, "bB-bicomplex", X.name, edge=len(out) - 1)


def periodic_estimate(X, direction=None):
    """HP^0, HP^1 estimated by the HC dimensions in the largest degrees of each parity."""
    hc = cyclic_invariant(X, direction)
    dims = hc.dims
    est, stab = [], []
    for eps in (0, 1):
        ns = [n for n in range(len(dims)) if n % 2 == eps]
        if not ns:
            est.append(None)
            stab.append(False)
            continue
        n = ns[-1]
        est.append(dims[n])
        stab.append(n - 2 >= 0 and dims[n - 2] == dims[n])
    return ComplexReport("HP-estimate", hc.direction, est, "HC stabilization", hc.name,
                         stabilized=stab, extra={"hc_dims": dims})


# ---------------------------------------------------------------------------
# coseparability homotopy

class HomotopyCertificate:
    def __init__(self, degrees, identity, degree0, certificates):
        self.degrees = degrees
        self.identity = identity
        self.degree0 = degree0
        self.certificates = certificates

    def as_dict(self):
        return {"degrees": self.degrees, "identity": self.identity, "degree0": self.degree0,
                "certificates": [c.as_dict() for c in self.certificates]}


def homotopy_maps(X, d):
    """h_n : C^n -> C^(n-1), n = 1..top, h(c0 (x) c1 ...) = c0' (x)_H delta(c0'' (x) c1).c2 (x) ..."""
    M = X.meta["module"]
    C = M.coring
    cc = C.cc
    left = C.carrier.left_action
    dm = d.delta
    dval = {}

    def delta_of(x, y):
        v = dval.get((x, y))
        if v is None:
            v = dm.apply(cc.project((x, y)))
            dval[(x, y)] = v
        return v

    certs = []
    hs = {}
    for n in range(1, X.top + 1):
        def f(key, n=n):
            out = {}
            c0, c1 = key[0], key[1]
            for (x, y), a in C.delta_keys(c0).items():
                r = delta_of(y, c1)
                if not r:
                    continue
                if n == 1:
                    for s, e in r.items():
                        vaddto(out, {(x, s): a * e})
                else:
                    for s, e in r.items():
                        for z, g in left[s].columns[key[2]].items():
                            vaddto(out, {(x, z) + key[3:]: a * e * g})
            return out
        hs[n] = induced_map_keys(f, X.spaces[n], X.spaces[n - 1], label="h on C^%d" % n, certificates=certs)
    return hs, certs


def coseparable_homotopy(X, d):
    """Certify bh + hb = id on C^n for 1 <= n <= N-1 for the cocyclic module X of a module coring."""
    F = X.field
    b = b_matrices(X)
    hs, certs = homotopy_maps(X, d)
    checked = []
    for n in range(1, X.N):
        lhs = b[n - 1] @ hs[n] + hs[n + 1] @ b[n]
        I = Matrix.identity(F, X.spaces[n].dim)
        if lhs != I:
            j, diff = lhs.first_difference(I)
            raise HomotopyViolation("bh + hb != id in degree %d" % n,
                                    {"degree": n, "basis_vector": j,
                                     "difference": {str(k): str(v) for k, v in sorted(diff.items())}})
        checked.append(n)
    hb0 = hs[1] @ b[0]
    I0 = Matrix.identity(F, X.spaces[0].dim)
    degree0 = {"hb_equals_id": hb0 == I0, "rank_b0": rank(b[0]), "dim_C0": X.spaces[0].dim,
               "rank_id_minus_hb": rank(I0 - hb0)}
    return HomotopyCertificate(checked, "bh + hb = id", degree0, certs)


def verify_prop33(P, theta, N=4):
    """HC of the cocyclic module of P acting on itself versus dim ker(alpha - beta)."""
    from .algebroid import check_haar, self_module_coring
    from .cyclic import hopf_cocyclic
    hs = check_haar(P, theta)
    report = {"check": "prop33", "object": P.name, "haar_normal": hs.normal}
    if not hs.normal:
        report.update(passed=False, precondition="Haar system is not normal")
        return report
    X = hopf_cocyclic(self_module_coring(P), N)
    hc = cyclic_invariant(X)
    kdim = P.base.dim - rank(P.alpha.matrix - P.beta.matrix)
    rows = []
    for n, dmn in enumerate(hc.dims):
        expected = 0 if n % 2 else kdim
        rows.append({"degree": n, "dim": dmn, "expected": expected, "passed": dmn == expected})
    report.update(ker_alpha_minus_beta=kdim, hc_dims=hc.dims, degrees=rows,
                  passed=all(r["passed"] for r in rows))
    return report
