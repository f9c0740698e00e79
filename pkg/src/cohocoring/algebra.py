"""Finite-dimensional algebras, morphisms, bimodules and balanced tensors.

An algebra is given by structure constants: ``mult[i][j]`` is the sparse
coordinate vector of b_i b_j.  Bimodules store one action matrix per basis
element of the acting algebra.
"""

from itertools import product

from .errors import (AlgebraMismatch, AssociativityViolation, BimoduleViolation,
                     DimensionMismatch, MorphismViolation, NotAGroup, UnitViolation)
from .linalg import Echelon, Matrix, vaddto, vector_to_json
from .spaces import FreeSpace, TensorPair, induced_map_keys


def _sparse(field, v):
    if isinstance(v, dict):
        return {int(k): field(a) for k, a in v.items() if field(a)}
    out = {}
    for k, a in enumerate(v):
        a = field(a)
        if a:
            out[k] = a
    return out


class AlgebraSpec:
    """A unital associative algebra over ``field`` with basis b_0..b_{dim-1}."""

    def __init__(self, field, dim, mult, unit, name="A", labels=None):
        self.field = field
        self.dim = dim
        self.mult = mult
        self.unit = unit
        self.name = name
        self.labels = labels or ["b%d" % i for i in range(dim)]
        self._left = None
        self._right = None
        self._gens = None

    # arithmetic on sparse coordinate vectors
    def mul(self, u, v):
        out = {}
        mult = self.mult
        for i, a in u.items():
            row = mult[i]
            for j, b in v.items():
                vaddto(out, row[j], a * b)
        return out

    def basis_vector(self, i):
        return {i: self.field.one}

    def is_unit_index(self):
        """Index i with b_i = 1, or None."""
        if len(self.unit) == 1:
            (i, a), = self.unit.items()
            if a == self.field.one:
                return i
        return None

    @property
    def left_mult(self):
        """Matrices of x -> b_i x."""
        if self._left is None:
            self._left = [Matrix(self.field, self.dim, self.dim, [self.mult[i][j] for j in range(self.dim)])
                          for i in range(self.dim)]
        return self._left

    @property
    def right_mult(self):
        """Matrices of x -> x b_i."""
        if self._right is None:
            self._right = [Matrix(self.field, self.dim, self.dim, [self.mult[j][i] for j in range(self.dim)])
                           for i in range(self.dim)]
        return self._right

    def generators(self):
        """A small algebra-generating set (indices), chosen greedily in basis order.

        Relations of balanced tensors only need generators: if a relation
        holds for g and h it holds for gh.
        """
        if self._gens is None:
            gens = []
            span = self._closure(gens)
            for i in range(self.dim):
                if len(span) == self.dim:
                    break
                if not span.contains({i: self.field.one}):
                    gens.append(i)
                    span = self._closure(gens)
            self._gens = gens
        return self._gens

    def _closure(self, gens):
        e = Echelon(self.field)
        basis = []
        todo = [dict(self.unit)]
        while todo:
            v = todo.pop()
            if e.insert(v) is None:
                continue
            basis.append(v)
            for g in gens:
                todo.append(self.mul(v, {g: self.field.one}))
        return e

    def matrix_equal(self, other):
        return (self.dim == other.dim and self.unit == other.unit and self.mult == other.mult)

    def __repr__(self):
        return "AlgebraSpec(%s, dim=%d)" % (self.name, self.dim)


def make_algebra(field, dim, mult, unit, name="A", labels=None, check=True):
    """Build and validate an algebra from (dense or sparse) structure constants."""
    if len(mult) != dim or any(len(row) != dim for row in mult):
        raise DimensionMismatch("structure constants must be %d x %d" % (dim, dim))
    m = [[_sparse(field, mult[i][j]) for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if any(k >= dim or k < 0 for k in m[i][j]):
                raise DimensionMismatch("product b%d b%d has coordinates outside dim %d" % (i, j, dim))
    u = _sparse(field, unit)
    A = AlgebraSpec(field, dim, m, u, name, labels)
    if check:
        check_algebra(A)
    return A


def check_algebra(A):
    F = A.field
    for i in range(A.dim):
        e = {i: F.one}
        if A.mul(A.unit, e) != e or A.mul(e, A.unit) != e:
            raise UnitViolation("unit fails on basis element %d" % i, {"basis": i})
    for i, j, k in product(range(A.dim), repeat=3):
        lhs = A.mul(A.mult[i][j], {k: F.one})
        rhs = A.mul({i: F.one}, A.mult[j][k])
        if lhs != rhs:
            raise AssociativityViolation(
                "(b%d b%d) b%d != b%d (b%d b%d)" % (i, j, k, i, j, k),
                {"triple": [i, j, k], "lhs": vector_to_json(F, lhs), "rhs": vector_to_json(F, rhs)})
    return A


def ground_field_algebra(field):
    return make_algebra(field, 1, [[[1]]], [1], name="k", labels=["1"])


def dual_numbers(field):
    """D = k[x]/(x^2) with basis {1, x}."""
    mult = [[{0: 1}, {1: 1}], [{1: 1}, {}]]
    return make_algebra(field, 2, mult, [1, 0], name="D", labels=["1", "x"])


def matrix_algebra(field, n):
    """M_n(k), basis e_ij at index i*n + j."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d = n * n
    mult = [[{} for _ in range(d)] for _ in range(d)]
    for i, j, k, l in product(range(n), repeat=4):
        if j == k:
            mult[i * n + j][k * n + l] = {i * n + l: 1}
    unit = {i * n + i: 1 for i in range(n)}
    labels = ["e%d%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
    name = "k" if n == 1 else "M%d" % n
    return make_algebra(field, d, mult, unit, name=name, labels=labels)


class Group:
    """A finite group given by its Cayley table (``table[i][j]`` = index of g_i g_j)."""

    def __init__(self, table, names=None, name="G"):
        n = len(table)
        self.order = n
        self.table = [list(r) for r in table]
        self.name = name
        self.names = names or ["g%d" % i for i in range(n)]
        if any(len(r) != n for r in table) or any(not (0 <= x < n) for r in table for x in r):
            raise NotAGroup("Cayley table is not square over its index set", {})
        t = self.table
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise NotAGroup("not associative", {"triple": [a, b, c]})
        ids = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if not ids:
            raise NotAGroup("no identity element", {})
        self.identity = ids[0]
        self.inverse = []
        for x in range(n):
            inv = [y for y in range(n) if t[x][y] == self.identity and t[y][x] == self.identity]
            if not inv:
                raise NotAGroup("element %d has no inverse" % x, {"element": x})
            self.inverse.append(inv[0])


def cyclic_group(n):
    return Group([[(i + j) % n for j in range(n)] for i in range(n)],
                 names=["g^%d" % i for i in range(n)], name="Z%d" % n)


def symmetric_group_3():
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    idx = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # (p q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(3))

    table = [[idx[compose(p, q)] for q in perms] for p in perms]
    names = ["".join(str(x + 1) for x in p) for p in perms]
    return Group(table, names=names, name="S3")


def group_algebra(field, group):
    """k[G]; accepts a Group or a raw Cayley table."""
    if not isinstance(group, Group):
        group = Group(group)
    n = group.order
    mult = [[{group.table[i][j]: 1} for j in range(n)] for i in range(n)]
    A = make_algebra(field, n, mult, {group.identity: 1}, name="k" + group.name, labels=group.names)
    A.group = group
    return A


def opposite(A):
    mult = [[A.mult[j][i] for j in range(A.dim)] for i in range(A.dim)]
    name = A.name if A.dim == 1 else A.name + "^op"
    B = AlgebraSpec(A.field, A.dim, mult, dict(A.unit), name, list(A.labels))
    return B


def tensor_algebra(A, B):
    """A (x) B with basis a_i (x) b_j at index i*dim(B) + j."""
    if A.field != B.field:
        raise AlgebraMismatch("algebras over different fields")
    F = A.field
    dB = B.dim
    mult = [[{} for _ in range(A.dim * dB)] for _ in range(A.dim * dB)]
    for i, j, k, l in product(range(A.dim), range(dB), range(A.dim), range(dB)):
        out = {}
        for p, a in A.mult[i][k].items():
            for q, b in B.mult[j][l].items():
                out[p * dB + q] = a * b
        mult[i * dB + j][k * dB + l] = out
    unit = {p * dB + q: a * b for p, a in A.unit.items() for q, b in B.unit.items()}
    if A.dim == 1 and B.dim == 1:
        name = "k"
    elif B.dim == 1:
        name = A.name
    elif A.dim == 1:
        name = B.name
    else:
        name = "%s(x)%s" % (A.name, B.name)
    labels = ["%s*%s" % (x, y) if A.dim > 1 and B.dim > 1 else (x if B.dim == 1 else y)
              for x in A.labels for y in B.labels]
    return AlgebraSpec(F, A.dim * dB, mult, unit, name, labels)


def enveloping(A):
    E = tensor_algebra(A, opposite(A))
    E.name = "k" if A.dim == 1 else A.name + "^e"
    return E


def is_field_algebra(A):
    return A.dim == 1


# ---------------------------------------------------------------------------
# morphisms

class AlgebraMorphism:
    """An algebra homomorphism or antihomomorphism given by its matrix."""

    def __init__(self, source, target, matrix, variant="homomorphism"):
        self.source = source
        self.target = target
        self.matrix = matrix
        self.variant = variant

    def __call__(self, v):
        return self.matrix.apply(v)

    def image(self, i):
        return self.matrix.columns[i]


def make_morphism(source, target, matrix, variant="homomorphism", check=True):
    if variant not in ("homomorphism", "antihomomorphism"):
        raise ValueError("variant must be homomorphism or antihomomorphism")
    if matrix.shape != (target.dim, source.dim):
        raise DimensionMismatch("morphism matrix has shape %s, expected %s"
                                % (matrix.shape, (target.dim, source.dim)))
    f = AlgebraMorphism(source, target, matrix, variant)
    if check:
        check_morphism(f)
    return f


def check_morphism(f):
    A, B, F = f.source, f.target, f.source.field
    if f(A.unit) != B.unit:
        raise MorphismViolation("f(1) != 1", {"image_of_unit": vector_to_json(F, f(A.unit))})
    for i, j in product(range(A.dim), repeat=2):
        lhs = f(A.mult[i][j])
        if f.variant == "homomorphism":
            rhs = B.mul(f.image(i), f.image(j))
        else:
            rhs = B.mul(f.image(j), f.image(i))
        if lhs != rhs:
            raise MorphismViolation("multiplicativity fails on (%d, %d)" % (i, j),
                                    {"pair": [i, j], "lhs": vector_to_json(F, lhs),
                                     "rhs": vector_to_json(F, rhs)})
    return f


def unit_map(A):
    """The structure map k -> A."""
    k = ground_field_algebra(A.field)
    return make_morphism(k, A, Matrix(A.field, A.dim, 1, [dict(A.unit)]))


def identity_morphism(A):
    return make_morphism(A, A, Matrix.identity(A.field, A.dim), check=False)


# ---------------------------------------------------------------------------
# bimodules

class BimoduleSpec:
    """An (L, R)-bimodule: ``left_action[i]`` is m -> l_i m, ``right_action[j]`` is m -> m r_j."""

    def __init__(self, dim, left_alg, right_alg, left_action, right_action, name="M"):
        self.dim = dim
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.left_action = left_action
        self.right_action = right_action
        self.field = left_alg.field
        self.name = name
        self._space = None

    def act_left(self, a, m):
        """a . m for sparse vectors a (in L) and m."""
        out = {}
        for i, c in a.items():
            vaddto(out, self.left_action[i].apply(m), c)
        return out

    def act_right(self, m, a):
        out = {}
        for i, c in a.items():
            vaddto(out, self.right_action[i].apply(m), c)
        return out

    @property
    def space(self):
        if self._space is None:
            self._space = FreeSpace(self.field, self.dim, name=self.name)
        return self._space


def _rep_matrix(A, matrices, v, right=False):
    out = Matrix.zero(A.field, matrices[0].rows, matrices[0].cols)
    for i, c in v.items():
        out = out + matrices[i].scale(c)
    return out


def make_bimodule(dim, left_alg, right_alg, left_action, right_action, name="M", check=True):
    M = BimoduleSpec(dim, left_alg, right_alg, left_action, right_action, name)
    if check:
        check_bimodule(M)
    return M


def check_bimodule(M):
    F = M.field
    L, R = M.left_alg, M.right_alg
    if len(M.left_action) != L.dim or len(M.right_action) != R.dim:
        raise DimensionMismatch("one action matrix per basis element required")
    for mat in list(M.left_action) + list(M.right_action):
        if mat.shape != (M.dim, M.dim):
            raise DimensionMismatch("action matrices must be %d x %d" % (M.dim, M.dim))
    I = Matrix.identity(F, M.dim)
    if _rep_matrix(L, M.left_action, L.unit) != I:
        raise BimoduleViolation("left unit does not act as identity", {"side": "left"})
    if _rep_matrix(R, M.right_action, R.unit) != I:
        raise BimoduleViolation("right unit does not act as identity", {"side": "right"})
    for i, j in product(range(L.dim), repeat=2):
        if M.left_action[i] @ M.left_action[j] != _rep_matrix(L, M.left_action, L.mult[i][j]):
            raise BimoduleViolation("left action not associative", {"side": "left", "pair": [i, j]})
    for i, j in product(range(R.dim), repeat=2):
        if M.right_action[j] @ M.right_action[i] != _rep_matrix(R, M.right_action, R.mult[i][j]):
            raise BimoduleViolation("right action not associative", {"side": "right", "pair": [i, j]})
    for i, j in product(range(L.dim), range(R.dim)):
        if M.left_action[i] @ M.right_action[j] != M.right_action[j] @ M.left_action[i]:
            raise BimoduleViolation("left and right actions do not commute",
                                    {"left": i, "right": j})
    return M


def regular_bimodule(A):
    """A as an (A, A)-bimodule."""
    return BimoduleSpec(A.dim, A, A, A.left_mult, A.right_mult, name=A.name)


def restrict_bimodule(M, left=None, right=None):
    """Restrict the actions of M along algebra homomorphisms into its acting algebras."""
    la, ra = M.left_action, M.right_action
    L, R = M.left_alg, M.right_alg
    if left is not None:
        la = [_rep_matrix(L, M.left_action, left.image(i)) for i in range(left.source.dim)]
        L = left.source
    if right is not None:
        ra = [_rep_matrix(R, M.right_action, right.image(i)) for i in range(right.source.dim)]
        R = right.source
    return BimoduleSpec(M.dim, L, R, la, ra, name=M.name)


# ---------------------------------------------------------------------------
# balanced tensor products

class BalancedTensor(TensorPair):
    """M_1 (x)_R ... (x)_R M_n built by iterated quotients.

    Stage t is the quotient of (stage t-1) (x) M_t by the balancing relations
    for the generators of R.  Basis elements are pure tensors of factor
    basis indices (``self.basis`` lists them as index tuples).
    """

    def __init__(self, factors, over, left_space, last):
        self.factors = factors
        self.over = over
        gens = over.generators()
        prev = left_space

        def act_right(key, g, _prev_factor=factors[-2]):
            m = key[-1]
            return {key[:-1] + (k,): a for k, a in _prev_factor.right_action[g].columns[m].items()}

        def act_left(g, key, _m=last):
            return {(k,): a for k, a in _m.left_action[g].columns[key[0]].items()}

        super().__init__(prev, last.space, gens, act_right, act_left,
                         name="(x)_%s" % over.name)

    # outer structure -----------------------------------------------------
    def left_action_keys(self, g, key):
        M = self.factors[0]
        return {(k,) + key[1:]: a for k, a in M.left_action[g].columns[key[0]].items()}

    def right_action_keys(self, key, g):
        M = self.factors[-1]
        return {key[:-1] + (k,): a for k, a in M.right_action[g].columns[key[-1]].items()}

    def outer_bimodule(self, certify=True):
        """The induced (left of first factor, right of last factor) bimodule, certified."""
        L = self.factors[0].left_alg
        R = self.factors[-1].right_alg
        la = [induced_map_keys(lambda k, g=g: self.left_action_keys(g, k), self, self,
                               certify=certify, label="left action") for g in range(L.dim)]
        ra = [induced_map_keys(lambda k, g=g: self.right_action_keys(k, g), self, self,
                               certify=certify, label="right action") for g in range(R.dim)]
        return BimoduleSpec(self.dim, L, R, la, ra, name=self.name)


def balanced_tensor(factors, over):
    """Balanced tensor product of bimodules over ``over``.

    A single factor is returned as its own space.  Adjacent right/left
    algebras must both be ``over``.
    """
    if not factors:
        raise ValueError("need at least one factor")
    for a, b in zip(factors, factors[1:]):
        if a.right_alg is not over and not a.right_alg.matrix_equal(over):
            raise AlgebraMismatch("right algebra of %s is not %s" % (a.name, over.name))
        if b.left_alg is not over and not b.left_alg.matrix_equal(over):
            raise AlgebraMismatch("left algebra of %s is not %s" % (b.name, over.name))
    if len(factors) == 1:
        return factors[0].space
    space = factors[0].space
    for t in range(2, len(factors) + 1):
        space = BalancedTensor(factors[:t], over, space, factors[t - 1])
    return space


def lift_map_to_tensor(maps, src, tgt, certify=True, budget=None):
    """Apply ``maps[i]`` to leg i of pure tensors and push through the quotients."""
    if len(maps) != src.arity:
        raise DimensionMismatch("need one map per tensor leg")

    def f(key):
        out = {(): maps[0].field.one}
        for leg, m in zip(key, maps):
            col = m.columns[leg]
            nxt = {}
            for k, a in out.items():
                for j, b in col.items():
                    kk = k + (j,)
                    x = nxt.get(kk)
                    nxt[kk] = a * b if x is None else x + a * b
            out = {k: a for k, a in nxt.items() if a}
        return out

    return induced_map_keys(f, src, tgt, certify=certify, budget=budget, label="slot-wise map")
