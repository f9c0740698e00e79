"""Exact linear algebra over Q or F_p.

Scalars are ``flint.fmpq`` (rationals) or ``flint.nmod`` (prime field).
Vectors are sparse dicts ``{index: scalar}`` with no stored zeros, and a
``Matrix`` stores its columns as such dicts, so ``M.columns[j]`` is the
image of the j-th basis vector.

Row reduction always uses the leftmost-pivot convention.  The reduced
echelon form of a subspace is canonical, so every basis, projection and
section produced here is independent of the order in which relation
vectors were supplied.
"""

from fractions import Fraction
from heapq import heapify, heappop, heappush

from flint import fmpq, fmpz, nmod

from .errors import DimensionMismatch, WellDefinednessViolation


class Field:
    """The ground field: ``Field()`` is Q, ``Field(p)`` is F_p for prime p."""

    def __init__(self, p=0):
        p = int(p)
        if p:
            if p < 2 or not fmpz(p).is_prime():
                raise ValueError("characteristic %d is not prime" % p)
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @property
    def characteristic(self):
        return self.p

    @property
    def name(self):
        return "Q" if self.p == 0 else "F%d" % self.p

    def __call__(self, x):
        if self.p:
            if isinstance(x, nmod):
                return x
            q = _to_fmpq(x)
            num = nmod(int(q.p), self.p)
            den = int(q.q) % self.p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return num / nmod(den, self.p)
        return _to_fmpq(x)

    def to_str(self, x):
        if self.p:
            return str(int(x))
        return str(x)

    def to_fraction(self, x):
        if self.p:
            return Fraction(int(x))
        return Fraction(int(x.p), int(x.q))

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(%s)" % (self.p or "Q")


def _to_fmpq(x):
    if isinstance(x, fmpq):
        return x
    if isinstance(x, (int, fmpz)):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return fmpq(f.numerator, f.denominator)
    if isinstance(x, nmod):
        return fmpq(int(x))
    raise TypeError("cannot convert %r to an exact scalar" % (x,))


QQ = Field()


# ---------------------------------------------------------------------------
# sparse vectors

def vadd(u, v, c=1):
    """Return u + c*v as a new sparse vector."""
    w = dict(u)
    for k, a in v.items():
        x = w.get(k)
        x = c * a if x is None else x + c * a
        if x:
            w[k] = x
        else:
            w.pop(k, None)
    return w


def vaddto(w, v, c=1):
    """In place: w += c*v."""
    for k, a in v.items():
        x = w.get(k)
        x = c * a if x is None else x + c * a
        if x:
            w[k] = x
        else:
            w.pop(k, None)
    return w


def vscale(v, c):
    if not c:
        return {}
    return {k: c * a for k, a in v.items()}


class Matrix:
    """An exact rows x cols matrix stored column-wise (sparse).

    Treat instances as immutable: operations return new matrices.
    """

    __slots__ = ("rows", "cols", "columns", "field")

    def __init__(self, field, rows, cols, columns=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise DimensionMismatch("expected %d columns, got %d" % (cols, len(columns)))
        self.columns = [
            {i: a for i, a in col.items() if a} for col in columns
        ]

    # construction --------------------------------------------------------
    @classmethod
    def from_dense(cls, field, grid, cols=None):
        grid = [list(r) for r in grid]
        rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if rows else 0
        columns = [{} for _ in range(cols)]
        for i, r in enumerate(grid):
            if len(r) != cols:
                raise DimensionMismatch("ragged matrix row %d" % i)
            for j, x in enumerate(r):
                x = field(x)
                if x:
                    columns[j][i] = x
        return cls(field, rows, cols, columns)

    @classmethod
    def from_rows(cls, field, row_vectors, cols):
        columns = [{} for _ in range(cols)]
        for i, r in enumerate(row_vectors):
            for j, x in r.items():
                if j >= cols:
                    raise DimensionMismatch("row %d has entry in column %d >= %d" % (i, j, cols))
                columns[j][i] = x
        return cls(field, len(row_vectors), cols, columns)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols)

    # access --------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.columns[j].get(i, self.field.zero)

    def to_dense(self):
        grid = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, a in col.items():
                grid[i][j] = a
        return grid

    def row_vectors(self):
        out = [{} for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, a in col.items():
                out[i][j] = a
        return out

    def is_zero(self):
        return not any(self.columns)

    def nnz(self):
        return sum(len(c) for c in self.columns)

    # arithmetic ----------------------------------------------------------
    def apply(self, v):
        """Matrix times sparse vector."""
        out = {}
        for j, c in v.items():
            if c:
                vaddto(out, self.columns[j], c)
        return out

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch("cannot compose %s with %s" % (self.shape, other.shape))
        return Matrix(self.field, self.rows, other.cols, [self.apply(c) for c in other.columns])

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols,
                      [vadd(a, b) for a, b in zip(self.columns, other.columns)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols,
                      [vadd(a, b, -1) for a, b in zip(self.columns, other.columns)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = self.field(c)
        return Matrix(self.field, self.rows, self.cols, [vscale(col, c) for col in self.columns])

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows, self.row_vectors())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    __hash__ = None

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape %s != %s" % (self.shape, other.shape))

    def first_difference(self, other):
        """Return (column, difference vector) for the first differing column, or None."""
        self._same_shape(other)
        for j, (a, b) in enumerate(zip(self.columns, other.columns)):
            if a != b:
                return j, vadd(a, b, -1)
        return None

    def __repr__(self):
        return "Matrix(%dx%d, nnz=%d, %s)" % (self.rows, self.cols, self.nnz(), self.field.name)


def hstack(field, rows, blocks):
    cols = []
    for b in blocks:
        cols.extend(b.columns)
    return Matrix(field, rows, len(cols), cols)


# ---------------------------------------------------------------------------
# echelon forms

class Echelon:
    """Incrementally built echelon basis of a subspace of field^ambient.

    Each stored row is normalised with coefficient 1 at its pivot, which is
    its smallest index.  ``reduce`` returns the canonical remainder of a
    vector modulo the subspace: it is supported on non-pivot indices only,
    and equals the image under the leftmost-pivot projection.
    """

    def __init__(self, field):
        self.field = field
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v):
        pivots = self.pivots
        v = dict(v)
        heap = [k for k in v if k in pivots]
        if not heap:
            return v
        heapify(heap)
        queued = set(heap)
        while heap:
            p = heappop(heap)
            queued.discard(p)
            c = v.pop(p, None)
            if not c:
                continue
            for k, a in pivots[p].items():
                if k == p:
                    continue
                x = v.get(k)
                x = -c * a if x is None else x - c * a
                if x:
                    v[k] = x
                    if k in pivots and k not in queued:
                        heappush(heap, k)
                        queued.add(k)
                else:
                    v.pop(k, None)
        return v

    def insert(self, v):
        """Add v to the span; return its new pivot or None if already dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        inv = self.field.one / r[p]
        self.pivots[p] = {k: a * inv for k, a in r.items()}
        return p

    def contains(self, v):
        return not self.reduce(v)

    def rref_rows(self):
        """Fully reduced rows, sorted by pivot (the canonical RREF)."""
        out = []
        for p in sorted(self.pivots):
            row = self.pivots[p]
            rest = self.reduce({k: a for k, a in row.items() if k != p})
            rest[p] = self.field.one
            out.append(dict(sorted(rest.items())))
        return out


def rank(m):
    """Row rank of ``m`` (equal to its column rank)."""
    e = Echelon(m.field)
    r = 0
    for col in m.columns:
        if col and e.insert(col) is not None:
            r += 1
    return r


def rank_of_vectors(field, vectors):
    e = Echelon(field)
    return sum(1 for v in vectors if v and e.insert(v) is not None)


def kernel_basis(m):
    """Basis of {v : m v = 0} as the rows of a matrix.

    Column j of ``m`` is dependent on earlier columns exactly when j is a
    non-pivot column of rref(m); the basis vector for j is e_j minus the
    unique combination of pivot columns, i.e. the standard rref kernel
    basis, listed in increasing order of j.
    """
    field = m.field
    pivots = {}   # pivot row-index -> (normalised reduced column, combination over columns)
    kernel = []
    for j, col in enumerate(m.columns):
        v = dict(col)
        combo = {j: field.one}
        heap = [k for k in v if k in pivots]
        heapify(heap)
        queued = set(heap)
        while heap:
            p = heappop(heap)
            queued.discard(p)
            c = v.get(p)
            if not c:
                continue
            row, rc = pivots[p]
            for k, a in row.items():
                x = v.get(k)
                x = -c * a if x is None else x - c * a
                if x:
                    v[k] = x
                    if k in pivots and k not in queued:
                        heappush(heap, k)
                        queued.add(k)
                else:
                    v.pop(k, None)
            vaddto(combo, rc, -c)
        if v:
            p = min(v)
            inv = field.one / v[p]
            pivots[p] = ({k: a * inv for k, a in v.items()}, vscale(combo, inv))
        else:
            kernel.append(combo)
    return Matrix.from_rows(field, kernel, m.cols)


def solve_affine(field, equations, nvars):
    """Solve a linear system given as rows ``(coeffs: dict, rhs)``.

    Returns ``(particular, kernel_rows)`` with free variables set to zero in
    the particular solution, or ``None`` when the system is inconsistent.
    The extra column ``nvars`` carries the right-hand side.
    """
    e = Echelon(field)
    for coeffs, rhs in equations:
        row = dict(coeffs)
        if rhs:
            row[nvars] = -field(rhs)
        e.insert(row)
    rows = e.rref_rows()
    if any(min(r) == nvars for r in rows):
        return None
    particular = {}
    pivset = set()
    for r in rows:
        p = min(r)
        pivset.add(p)
        c = r.get(nvars)
        if c:
            particular[p] = -c
    free = [j for j in range(nvars) if j not in pivset]
    kern = []
    for f in free:
        v = {f: field.one}
        for r in rows:
            c = r.get(f)
            if c:
                v[min(r)] = -c
        kern.append(v)
    return particular, kern


# ---------------------------------------------------------------------------
# quotient spaces

class QuotientSpace:
    """Quotient of field^ambient_dim by the span W of the relation rows.

    Basis of the quotient: the non-pivot columns of rref(W), in increasing
    order.  ``sect`` sends quotient basis vector q to the ambient unit
    vector at the q-th free column; ``proj`` sends a pivot unit vector e_p
    to minus the free part of its rref row and a free unit vector to itself.
    """

    def __init__(self, field, ambient_dim, echelon, relations=None):
        self.field = field
        self.ambient_dim = ambient_dim
        self._echelon = echelon
        self._relations = relations
        piv = echelon.pivots
        self.free = [j for j in range(ambient_dim) if j not in piv]
        self.index = {j: q for q, j in enumerate(self.free)}
        self._proj = None
        self._sect = None

    @property
    def dim(self):
        return len(self.free)

    @property
    def relations(self):
        if self._relations is None:
            self._relations = Matrix.from_rows(self.field, self._echelon.rref_rows(), self.ambient_dim)
        return self._relations

    def project(self, v):
        """Image of an ambient sparse vector in quotient coordinates."""
        r = self._echelon.reduce(v)
        idx = self.index
        return {idx[k]: a for k, a in r.items()}

    def lift(self, q):
        """Section applied to a quotient sparse vector."""
        free = self.free
        return {free[k]: a for k, a in q.items()}

    @property
    def proj(self):
        if self._proj is None:
            cols = [self.project({j: self.field.one}) for j in range(self.ambient_dim)]
            self._proj = Matrix(self.field, self.dim, self.ambient_dim, cols)
        return self._proj

    @property
    def sect(self):
        if self._sect is None:
            cols = [{j: self.field.one} for j in self.free]
            self._sect = Matrix(self.field, self.ambient_dim, self.dim, cols)
        return self._sect

    def __repr__(self):
        return "QuotientSpace(ambient=%d, dim=%d)" % (self.ambient_dim, self.dim)


def make_quotient(ambient_dim, relations):
    """Quotient of the ambient space by the row space of ``relations``."""
    if relations.cols != ambient_dim:
        raise DimensionMismatch(
            "relations have %d columns but ambient dimension is %d" % (relations.cols, ambient_dim))
    e = Echelon(relations.field)
    for r in relations.row_vectors():
        if r:
            e.insert(r)
    return QuotientSpace(relations.field, ambient_dim, e, relations)


def quotient_from_vectors(field, ambient_dim, vectors):
    e = Echelon(field)
    for v in vectors:
        if v:
            e.insert(v)
    return QuotientSpace(field, ambient_dim, e)


def identity_quotient(field, n):
    return QuotientSpace(field, n, Echelon(field))


def induced_map(f, src, tgt):
    """The map ``tgt.proj . f . src.sect`` after certifying f(W_src) lies in W_tgt.

    Raises WellDefinednessViolation carrying the offending relation row and
    its (nonzero) image in the target quotient.
    """
    if f.cols != src.ambient_dim or f.rows != tgt.ambient_dim:
        raise DimensionMismatch("map %s does not go from ambient %d to ambient %d"
                                % (f.shape, src.ambient_dim, tgt.ambient_dim))
    for i, w in enumerate(src.relations.row_vectors()):
        if not w:
            continue
        img = tgt.project(f.apply(w))
        if img:
            raise WellDefinednessViolation(
                "map does not preserve relations (relation row %d)" % i,
                {"relation": vector_to_json(src.field, w), "image": vector_to_json(src.field, img)})
    cols = [tgt.project(f.columns[j]) for j in src.free]
    return Matrix(f.field, tgt.dim, src.dim, cols)


def vector_to_json(field, v):
    return {str(k): field.to_str(a) for k, a in sorted(v.items())}
