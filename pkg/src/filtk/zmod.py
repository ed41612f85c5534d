"""Exact linear algebra over the integers.

Everything here works with arbitrary-precision Python ints: Smith normal
form with unimodular transforms, column-style Hermite normal form, lattice
membership/solving, finitely generated abelian groups presented by relation
matrices, homomorphisms with kernel/image/cokernel, Z/2-graded groups, and
cochain complexes with connecting homomorphisms.

Conventions:
  * a matrix is a list of rows of ints; shape (m, n) means m rows;
  * a group with ``ngens`` generators is Z^ngens modulo the column lattice
    of its relation matrix;
  * a homomorphism is a (tgt.ngens x src.ngens) integer matrix acting on
    column vectors of generator coordinates.
"""

from __future__ import annotations

from functools import lru_cache


class ZmodError(Exception):
    pass


class IllFormedHom(ZmodError):
    """Matrix does not map source relations into target relations."""


class NotExactInput(ZmodError):
    """A short exact sequence of complexes failed its exactness check."""


class BadModulus(ZmodError):
    pass


# ---------------------------------------------------------------------------
# basic integer matrix helpers


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def shape(a):
    return (len(a), len(a[0]) if a else 0)


def mat_mul(a, b):
    m, k = shape(a)
    k2, n = shape(b)
    if a and b:
        assert k == k2, (k, k2)
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(n):
                    oi[j] += x * bt[j]
    return out

def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def transpose(a):
    m, n = shape(a)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def col(a, j):
    return [row[j] for row in a]


def columns(a):
    m, n = shape(a)
    return [col(a, j) for j in range(n)]


def from_cols(cols, nrows):
    if not cols:
        return [[] for _ in range(nrows)]
    return [[c[i] for c in cols] for i in range(nrows)]


def hstack(a, b):
    if not a:
        return [row[:] for row in b]
    if not b:
        return [row[:] for row in a]
    return [ra + rb for ra, rb in zip(a, b)]


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


# ---------------------------------------------------------------------------
# Smith normal form with transforms


def smith_normal_form(a):
    """Return (U, D, V) with U*a*V = D, U and V unimodular.

    D is diagonal with non-negative entries satisfying d1 | d2 | ... .
    """
    m, n = shape(a)
    d = [row[:] for row in a]
    u = identity(m)
    v = identity(n)

    def row_op(i1, i2, q):
        # row i2 -= q * row i1
        for j in range(n):
            d[i2][j] -= q * d[i1][j]
        for j in range(m):
            u[i2][j] -= q * u[i1][j]

    def col_op(j1, j2, q):
        for i in range(m):
            d[i][j2] -= q * d[i][j1]
        for i in range(n):
            v[i][j2] -= q * v[i][j1]

    def row_swap(i1, i2):
        d[i1], d[i2] = d[i2], d[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def col_swap(j1, j2):
        for i in range(m):
            d[i][j1], d[i][j2] = d[i][j2], d[i][j1]
        for i in range(n):
            v[i][j1], v[i][j2] = v[i][j2], v[i][j1]

    def row_combine(i1, i2, x, y, xx, yy):
        # rows (i1, i2) <- (x*r1 + y*r2, xx*r1 + yy*r2); det must be +-1
        for j in range(n):
            p, q = d[i1][j], d[i2][j]
            d[i1][j] = x * p + y * q
            d[i2][j] = xx * p + yy * q
        for j in range(m):
            p, q = u[i1][j], u[i2][j]
            u[i1][j] = x * p + y * q
            u[i2][j] = xx * p + yy * q

    def col_combine(j1, j2, x, y, xx, yy):
        for i in range(m):
            p, q = d[i][j1], d[i][j2]
            d[i][j1] = x * p + y * q
            d[i][j2] = xx * p + yy * q
        for i in range(n):
            p, q = v[i][j1], v[i][j2]
            v[i][j1] = x * p + y * q
            v[i][j2] = xx * p + yy * q

    def clear_at(k):
        # make row k and column k zero outside the pivot (k, k)
        while True:
            # choose pivot: smallest nonzero abs value in submatrix
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if d[i][j] != 0 and (best is None or abs(d[i][j]) < best[0]):
                        best = (abs(d[i][j]), i, j)
            if best is None:
                return
            _, pi, pj = best
            if pi != k:
                row_swap(k, pi)
            if pj != k:
                col_swap(k, pj)
            pivot = d[k][k]
            done = True
            for i in range(k + 1, m):
                if d[i][k] != 0:
                    if d[i][k] % pivot == 0:
                        row_op(k, i, d[i][k] // pivot)
                    else:
                        g, x, y = xgcd(pivot, d[i][k])
                        row_combine(k, i, x, y, -(d[i][k] // g), pivot // g)
                        pivot = d[k][k]
                    done = False
            for j in range(k + 1, n):
                if d[k][j] != 0:
                    if d[k][j] % pivot == 0:
                        col_op(k, j, d[k][j] // pivot)
                    else:
                        g, x, y = xgcd(pivot, d[k][j])
                        col_combine(k, j, x, y, -(d[k][j] // g), pivot // g)
                        pivot = d[k][k]
                    done = False
            if done:
                return

    r = min(m, n)
    for k in range(r):
        clear_at(k)

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for k in range(r - 1):
            a_, b_ = d[k][k], d[k + 1][k + 1]
            if a_ != 0 and b_ % a_ != 0:
                col_op(k + 1, k, -1)  # col k += col k+1, puts b into column k
                clear_at(k)
                changed = True

    for k in range(r):
        if d[k][k] < 0:
            for j in range(n):
                d[k][j] = -d[k][j]
            for j in range(m):
                u[k][j] = -u[k][j]
    return u, d, v


def snf_diagonal(a):
    _, d, _ = smith_normal_form(a)
    m, n = shape(a)
    return [d[i][i] for i in range(min(m, n))]


def det_unimodular(a):
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# column-style Hermite form and lattice arithmetic


def hnf_cols(a):
    """Canonical echelon basis (as columns) of the column lattice of a.

    Pivots are positive, strictly descending by row of first nonzero entry,
    and entries of earlier pivot columns are reduced modulo later pivots in
    their pivot row.  The result is a canonical form for the lattice.
    """
    m, n = shape(a)
    cols = [c for c in columns(a) if any(c)]
    pivots = []  # list of (row, column-vector), in increasing row order
    for r in range(m):
        active = [c for c in cols if c[r] != 0]
        rest = [c for c in cols if c[r] == 0]
        if not active:
            cols = rest
            continue
        lead = active[0]
        for c in active[1:]:
            a_, b_ = lead[r], c[r]
            if b_ % a_ == 0:
                q = b_ // a_
                c2 = [y - q * x for x, y in zip(lead, c)]
            else:
                g, x, y = xgcd(a_, b_)
                l2 = [x * p + y * q for p, q in zip(lead, c)]
                c2 = [-(b_ // g) * p + (a_ // g) * q for p, q in zip(lead, c)]
                lead = l2
            if any(c2):
                rest.append(c2)
        if lead[r] < 0:
            lead = [-x for x in lead]
        # reduce earlier pivot columns at row r
        for i, (pr, pc) in enumerate(pivots):
            q = pc[r] // lead[r]
            if q:
                pivots[i] = (pr, [x - q * y for x, y in zip(pc, lead)])
        pivots.append((r, lead))
        cols = rest
    return from_cols([c for _, c in pivots], m)


def lattice_reduce(h, v):
    """Reduce vector v modulo the lattice with HNF column basis h.

    Returns the canonical coset representative (entries at pivot rows in
    [0, pivot)).
    """
    m, n = shape(h)
    v = v[:]
    for j in range(n):
        c = col(h, j)
        r = next(i for i in range(m) if c[i] != 0)
        q = v[r] // c[r]
        if q:
            for i in range(m):
                v[i] -= q * c[i]
    return v


def lattice_contains(h, v):
    return all(x == 0 for x in lattice_reduce(h, v))


def lattice_eq(a, b):
    return hnf_cols(a) == hnf_cols(b)


def solve(a, b):
    """One integer solution x of a @ x = b, or None."""
    m, n = shape(a)
    u, d, v = smith_normal_form(a)
    c = mat_vec(u, b)
    y = [0] * n
    for i in range(min(m, n)):
        di = d[i][i]
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    for i in range(min(m, n), m):
        if c[i] != 0:
            return None
    return mat_vec(v, y)


def kernel_cols(a):
    """Matrix whose columns are a basis of the integer kernel lattice."""
    m, n = shape(a)
    _, d, v = smith_normal_form(a)
    rank = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
    ker = [col(v, j) for j in range(rank, n)]
    return from_cols(ker, n)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


def _invariants_from_rels(ngens, rels):
    diag = snf_diagonal(rels) if rels and rels[0] else []
    nonzero = [d for d in diag if d != 0]
    torsion = tuple(d for d in nonzero if d >= 2)
    return ngens - len(nonzero), torsion


class Group:
    """Finitely generated abelian group Z^ngens / column lattice of rels."""

    def __init__(self, ngens, rels=None):
        self.ngens = ngens
        raw = rels if rels is not None else zeros(ngens, 0)
        if ngens == 0:
            raw = []
        self.rels = hnf_cols(raw) if ngens else []
        self._inv = None

    @classmethod
    def free(cls, rank):
        return cls(rank)

    @classmethod
    def cyclic(cls, order):
        if order == 0:
            return cls(1)
        return cls(1, [[order]])

    @property
    def invariants(self):
        """(free_rank, invariant factor tuple d1 | d2 | ...)."""
        if self._inv is None:
            self._inv = _invariants_from_rels(self.ngens, self.rels)
        return self._inv

    @property
    def free_rank(self):
        return self.invariants[0]

    @property
    def torsion(self):
        return list(self.invariants[1])

    def is_trivial(self):
        return self.invariants == (0, ())

    def iso(self, other):
        """The groups are abstractly isomorphic."""
        return self.invariants == other.invariants

    def reduce(self, v):
        if self.ngens == 0:
            return []
        return lattice_reduce(self.rels, v)

    def is_zero_el(self, v):
        return all(x == 0 for x in self.reduce(v))

    def el_eq(self, v, w):
        return self.reduce([a - b for a, b in zip(v, w)]) == [0] * self.ngens

    def tensor_zk(self, k):
        if k < 2:
            raise BadModulus(f"modulus must be >= 2, got {k}")
        extra = mat_scale(identity(self.ngens), k)
        return Group(self.ngens, hstack(self.rels, extra))

    def generator_lift(self):
        """A vector generating the group, for groups of rank one.

        Sign convention: first nonzero entry positive.  Raises if the group
        is not cyclic (free or finite).
        """
        fr, tor = self.invariants
        if not (fr + len(tor) == 1):
            raise ZmodError(f"group {self.invariants} is not cyclic nonzero")
        u, d, v = smith_normal_form(self.rels if self.rels and self.rels[0] else zeros(self.ngens, 1))
        # generators in new coordinates are the columns of u^-1; the free or
        # torsion generator is the one whose diagonal entry is 0 or >= 2
        diag = [d[i][i] if i < min(len(d), len(d[0]) if d else 0) else 0 for i in range(self.ngens)]
        idx = next(i for i in range(self.ngens) if diag[i] == 0 or diag[i] >= 2)
        uinv_col = solve(u, [1 if i == idx else 0 for i in range(self.ngens)])
        vec = self.reduce(uinv_col)
        if not any(vec):
            vec = uinv_col
        lead = next((x for x in vec if x != 0), 1)
        if lead < 0:
            vec = [-x for x in vec]
        return vec

    def str_invariants(self):
        fr, tor = self.invariants
        parts = ["Z"] * fr + [f"Z/{d}" for d in tor]
        if not parts:
            return "0"
        if fr > 1 and not tor:
            return f"Z^{fr}"
        return " + ".join(parts)

    def __repr__(self):
        return f"Group({self.str_invariants()})"


def direct_sum_groups(groups):
    """Direct sum, with inclusion and projection matrices per summand."""
    ngens = sum(g.ngens for g in groups)
    rels_cols = []
    offset = 0
    offsets = []
    for g in groups:
        offsets.append(offset)
        for c in columns(g.rels):
            vec = [0] * ngens
            vec[offset:offset + g.ngens] = c
            rels_cols.append(vec)
        offset += g.ngens
    total = Group(ngens, from_cols(rels_cols, ngens))
    incs, projs = [], []
    for g, off in zip(groups, offsets):
        inc = zeros(ngens, g.ngens)
        proj = zeros(g.ngens, ngens)
        for i in range(g.ngens):
            inc[off + i][i] = 1
            proj[i][off + i] = 1
        incs.append(inc)
        projs.append(proj)
    return total, incs, projs


class Hom:
    """Homomorphism between presented groups, as a matrix on generators."""

    def __init__(self, src, tgt, mat, check=True):
        self.src = src
        self.tgt = tgt
        self.mat = [row[:] for row in mat]
        ok = len(self.mat) == tgt.ngens and all(len(r) == src.ngens for r in self.mat)
        if not ok:
            raise IllFormedHom(
                f"matrix shape {shape(self.mat)} vs ({tgt.ngens}, {src.ngens})")
        if check and not self._well_defined():
            raise IllFormedHom("matrix does not respect source relations")

    def _well_defined(self):
        for c in columns(self.src.rels):
            if not self.tgt.is_zero_el(mat_vec(self.mat, c)):
                return False
        return True

    @classmethod
    def zero(cls, src, tgt):
        return cls(src, tgt, zeros(tgt.ngens, src.ngens), check=False)

    @classmethod
    def identity(cls, g):
        return cls(g, g, identity(g.ngens), check=False)

    def __call__(self, v):
        return self.tgt.reduce(mat_vec(self.mat, v))

    def compose(self, other):
        """self after other (self . other)."""
        assert other.tgt.ngens == self.src.ngens
        m, k, n = self.tgt.ngens, self.src.ngens, other.src.ngens
        if m == 0 or k == 0 or n == 0:
            mat = zeros(m, n)
        else:
            mat = mat_mul(self.mat, other.mat)
        return Hom(other.src, self.tgt, mat, check=False)

    def add(self, other):
        return Hom(self.src, self.tgt, mat_add(self.mat, other.mat), check=False)

    def neg(self):
        return Hom(self.src, self.tgt, mat_neg(self.mat), check=False)

    def scale(self, c):
        return Hom(self.src, self.tgt, mat_scale(self.mat, c), check=False)

    def is_zero(self):
        return all(self.tgt.is_zero_el(c) for c in columns(self.mat))

    def _graph_lattice(self):
        """Lattice {x : mat @ x in tgt relation lattice} inside Z^src.ngens."""
        if self.tgt.ngens == 0:
            return identity(self.src.ngens)
        stacked = hstack(self.mat, self.tgt.rels)
        ker = kernel_cols(stacked)
        top = [row for row in ker[: self.src.ngens]] if ker else zeros(self.src.ngens, 0)
        return hnf_cols(top)

    def kernel(self):
        """(kernel group, inclusion into source)."""
        klat = self._graph_lattice()  # contains src.rels automatically
        kcols = columns(klat)
        kgens = len(kcols)
        rel_exprs = []
        for c in columns(self.src.rels):
            expr = solve(klat, c) if kcols else ([] if not any(c) else None)
            if expr is None:
                raise ZmodError("source relation escaped the kernel lattice")
            rel_exprs.append(expr)
        kgroup = Group(kgens, from_cols(rel_exprs, kgens))
        incl = Hom(kgroup, self.src, klat if kcols else zeros(self.src.ngens, 0), check=False)
        return kgroup, incl

    def image(self):
        """(image group, inclusion into target)."""
        igroup = Group(self.src.ngens, self._graph_lattice())
        incl = Hom(igroup, self.tgt, self.mat, check=False)
        return igroup, incl

    def cokernel(self):
        """(cokernel group, projection from target)."""
        cgroup = Group(self.tgt.ngens, hstack(self.mat, self.tgt.rels))
        proj = Hom(self.tgt, cgroup, identity(self.tgt.ngens), check=False)
        return cgroup, proj

    def is_injective(self):
        return self.kernel()[0].is_trivial()

    def is_surjective(self):
        return self.cokernel()[0].is_trivial()

    def is_iso(self):
        return self.is_injective() and self.is_surjective()

    def preimage(self, y):
        """Some x with self(x) = y in the target, or None."""
        stacked = hstack(self.mat, self.tgt.rels)
        sol = solve(stacked, y)
        if sol is None:
            return None
        return sol[: self.src.ngens]

    def tensor_zk(self, k):
        return Hom(self.src.tensor_zk(k), self.tgt.tensor_zk(k), self.mat, check=False)

    def __repr__(self):
        return f"Hom({self.src.str_invariants()} -> {self.tgt.str_invariants()})"


def is_exact(f, g):
    """Exactness of  f.src -> f.tgt = g.src -> g.tgt  at the middle group."""
    if not g.compose(f).is_zero():
        return False
    span = hstack(f.mat, f.tgt.rels)
    h = hnf_cols(span)
    _, kincl = g.kernel()
    return all(lattice_contains(h, c) for c in columns(kincl.mat))


def check_exact_sequence(homs, cyclic=False):
    """Positions (0-based, at the target of homs[i]) where exactness fails."""
    bad = []
    pairs = list(zip(homs, homs[1:]))
    if cyclic and homs:
        pairs.append((homs[-1], homs[0]))
    for i, (f, g) in enumerate(pairs):
        if not is_exact(f, g):
            bad.append(i)
    return bad


# ---------------------------------------------------------------------------
# Z/2-graded groups and homomorphisms


class GradedGroup:
    """Pair of groups: even part (K0 side) and odd part (K1 side)."""

    def __init__(self, even, odd):
        self.even = even
        self.odd = odd

    @classmethod
    def zero(cls):
        return cls(Group(0), Group(0))

    def part(self, p):
        return self.even if p == 0 else self.odd

    def shift(self):
        return GradedGroup(self.odd, self.even)

    def tensor_zk(self, k):
        return GradedGroup(self.even.tensor_zk(k), self.odd.tensor_zk(k))

    def iso(self, other):
        return self.even.iso(other.even) and self.odd.iso(other.odd)

    def is_trivial(self):
        return self.even.is_trivial() and self.odd.is_trivial()

    def str_invariants(self):
        return f"even {self.even.str_invariants()}, odd {self.odd.str_invariants()}"

    def __repr__(self):
        return f"GradedGroup({self.str_invariants()})"


def graded_direct_sum(parts):
    ev, ev_inc, ev_pr = direct_sum_groups([p.even for p in parts])
    od, od_inc, od_pr = direct_sum_groups([p.odd for p in parts])
    return GradedGroup(ev, od), list(zip(ev_inc, od_inc)), list(zip(ev_pr, od_pr))


class GrHom:
    """Graded homomorphism of degree 0 or 1.

    ``e`` maps the even part of the source, ``o`` the odd part; a degree-1
    map sends even to odd and odd to even.
    """

    def __init__(self, src, tgt, degree, e, o):
        self.src = src
        self.tgt = tgt
        self.degree = degree % 2
        self.e = e
        self.o = o

    @classmethod
    def zero(cls, src, tgt, degree=0):
        te, to = (tgt.even, tgt.odd) if degree % 2 == 0 else (tgt.odd, tgt.even)
        return cls(src, tgt, degree, Hom.zero(src.even, te), Hom.zero(src.odd, to))

    @classmethod
    def identity(cls, g):
        return cls(g, g, 0, Hom.identity(g.even), Hom.identity(g.odd))

    @classmethod
    def from_parts(cls, src, tgt, degree, e_mat, o_mat, check=True):
        te, to = (tgt.even, tgt.odd) if degree % 2 == 0 else (tgt.odd, tgt.even)
        return cls(src, tgt, degree, Hom(src.even, te, e_mat, check=check),
                   Hom(src.odd, to, o_mat, check=check))

    def component(self, p):
        """The map out of the degree-p part of the source."""
        return self.e if p == 0 else self.o

    def compose(self, other):
        """self after other."""
        deg = (self.degree + other.degree) % 2
        if other.degree == 0:
            e = self.e.compose(other.e)
            o = self.o.compose(other.o)
        else:
            e = self.o.compose(other.e)
            o = self.e.compose(other.o)
        return GrHom(other.src, self.tgt, deg, e, o)

    def add(self, other):
        assert self.degree == other.degree
        return GrHom(self.src, self.tgt, self.degree, self.e.add(other.e), self.o.add(other.o))

    def neg(self):
        return GrHom(self.src, self.tgt, self.degree, self.e.neg(), self.o.neg())

    def scale(self, c):
        return GrHom(self.src, self.tgt, self.degree, self.e.scale(c), self.o.scale(c))

    def is_zero(self):
        return self.e.is_zero() and self.o.is_zero()

    def is_iso(self):
        return self.degree == 0 and self.e.is_iso() and self.o.is_iso()

    def shift(self):
        """The same map between the shifted groups (M[1] -> N[1])."""
        return GrHom(self.src.shift(), self.tgt.shift(), self.degree, self.o, self.e)

    def src_shift(self):
        """Reinterpret the source as shifted; flips the degree."""
        return GrHom(self.src.shift(), self.tgt, (self.degree + 1) % 2, self.o, self.e)

    def tgt_shift(self):
        """Reinterpret the target as shifted; flips the degree."""
        return GrHom(self.src, self.tgt.shift(), (self.degree + 1) % 2, self.e, self.o)

    def tensor_zk(self, k):
        return GrHom(self.src.tensor_zk(k), self.tgt.tensor_zk(k), self.degree,
                     self.e.tensor_zk(k), self.o.tensor_zk(k))

    def __repr__(self):
        return f"GrHom(deg {self.degree}, {self.src} -> {self.tgt})"


def graded_is_exact(f, g):
    """Exactness of a composable pair of graded maps, both parities."""
    if f.degree == 0:
        return is_exact(f.e, g.e) and is_exact(f.o, g.o)
    return is_exact(f.e, g.o) and is_exact(f.o, g.e)


def graded_block_hom(src_parts, tgt_parts, blocks, degree=0):
    """Assemble a graded hom between direct sums from a grid of blocks.

    blocks[i][j] maps src_parts[j] to tgt_parts[i]; None means zero.
    Returns (hom, src GradedGroup, tgt GradedGroup).
    """
    src, _, src_pr = graded_direct_sum(src_parts)
    tgt, tgt_inc, _ = graded_direct_sum(tgt_parts)
    out = GrHom.zero(src, tgt, degree)
    for i, row in enumerate(blocks):
        for j, b in enumerate(row):
            if b is None:
                continue
            inc_e, inc_o = tgt_inc[i]
            pr_e, pr_o = src_pr[j]
            inc = GrHom(b.tgt, tgt, 0,
                        Hom(b.tgt.even, tgt.even, inc_e, check=False),
                        Hom(b.tgt.odd, tgt.odd, inc_o, check=False))
            pr = GrHom(src, b.src, 0,
                       Hom(src.even, b.src.even, pr_e, check=False),
                       Hom(src.odd, b.src.odd, pr_o, check=False))
            out = out.add(inc.compose(b).compose(pr))
    return out, src, tgt


# ---------------------------------------------------------------------------
# cochain complexes


class Complex:
    """Bounded cochain complex of presented groups.

    ``groups[i]`` sits in degree lo + i and ``diffs[i]`` maps degree lo+i to
    degree lo+i+1.  d.d = 0 is asserted at construction.
    """

    def __init__(self, groups, diffs, lo=0, check=True):
        self.groups = groups
        self.diffs = diffs
        self.lo = lo
        assert len(diffs) == max(0, len(groups) - 1)
        if check:
            for d1, d2 in zip(diffs, diffs[1:]):
                if not d2.compose(d1).is_zero():
                    raise ZmodError("differential does not square to zero")

    def group(self, i):
        j = i - self.lo
        if 0 <= j < len(self.groups):
            return self.groups[j]
        return Group(0)

    def diff(self, i):
        j = i - self.lo
        if 0 <= j < len(self.diffs):
            return self.diffs[j]
        return Hom.zero(self.group(i), self.group(i + 1))

    @property
    def degrees(self):
        return range(self.lo, self.lo + len(self.groups))

    def cohomology(self, i):
        """(H^i, lift matrix H-gens -> cocycles, express function)."""
        gin = self.diff(i - 1)
        gout = self.diff(i)
        ker, kincl = gout.kernel()
        rel_exprs = []
        for c in columns(gin.mat):
            expr = kincl.preimage(self.group(i).reduce(c))
            if expr is None:
                raise ZmodError("image is not contained in the kernel")
            rel_exprs.append(expr)
        h = Group(ker.ngens, hstack(ker.rels, from_cols(rel_exprs, ker.ngens)))
        lift = kincl.mat

        def express(vec):
            pre = kincl.preimage(self.group(i).reduce(vec))
            if pre is None:
                raise ZmodError("vector is not a cocycle")
            return h.reduce(pre)

        return h, lift, express


def induced_on_cohomology(cx_a, cx_b, chain_maps, i):
    """Map H^i(cx_a) -> H^i(cx_b) induced by a chain map."""
    ha, lift_a, _ = cx_a.cohomology(i)
    hb, _, express_b = cx_b.cohomology(i)
    f = chain_maps.get(i) if isinstance(chain_maps, dict) else chain_maps[i - cx_a.lo]
    cols_out = []
    for c in columns(lift_a):
        cols_out.append(express_b(f(c)))
    return Hom(ha, hb, from_cols(cols_out, hb.ngens), check=False)


def connecting_homs(cx_a, cx_b, cx_c, iotas, pis):
    """Connecting maps H^i(C) -> H^{i+1}(A) of a short exact sequence.

    ``iotas[i]`` and ``pis[i]`` are the degree-i maps A^i -> B^i -> C^i.
    Degreewise exactness of the sequence is verified first.
    """
    degs = sorted(set(cx_a.degrees) | set(cx_b.degrees) | set(cx_c.degrees))
    for i in degs:
        iota, pi = iotas[i], pis[i]
        if not iota.is_injective():
            raise NotExactInput(f"degree {i}: left map not injective")
        if not pi.is_surjective():
            raise NotExactInput(f"degree {i}: right map not surjective")
        if not is_exact(iota, pi):
            raise NotExactInput(f"degree {i}: not exact at the middle")
    out = {}
    for i in degs:
        hc, lift_c, _ = cx_c.cohomology(i)
        ha1, _, express_a1 = cx_a.cohomology(i + 1)
        cols_out = []
        for c in columns(lift_c):
            b = pis[i].preimage(c)
            db = cx_b.diff(i)(b)
            a = iotas.get(i + 1, Hom.zero(cx_a.group(i + 1), cx_b.group(i + 1))).preimage(db) \
                if isinstance(iotas, dict) else iotas[i + 1].preimage(db)
            if a is None:
                raise NotExactInput("boundary escaped the subcomplex")
            cols_out.append(express_a1(a))
        out[i] = Hom(hc, ha1, from_cols(cols_out, ha1.ngens), check=False)
    return out


# ---------------------------------------------------------------------------
# elementary-divisor arithmetic, used as an independent oracle in tests


def tensor_invariants(inv_a, inv_b):
    """Invariants of A (x) B from invariant factors, by the gcd rules."""
    fa, ta = inv_a
    fb, tb = inv_b
    free = fa * fb
    tor = []
    tor += list(ta) * fb
    tor += list(tb) * fa
    for x in ta:
        for y in tb:
            g = xgcd(x, y)[0]
            if g >= 2:
                tor.append(g)
    return free, _normalize_factors(tor)


def _normalize_factors(factors):
    """Rewrite a multiset of cyclic orders as an invariant-factor chain."""
    primary = {}
    for f in factors:
        n = f
        p = 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                primary.setdefault(p, []).append(e)
            p += 1
        if n > 1:
            primary.setdefault(n, []).append(1)
    for p in primary:
        primary[p].sort(reverse=True)
    chain = []
    k = 0
    while True:
        d = 1
        for p, exps in primary.items():
            if k < len(exps):
                d *= p ** exps[k]
        if d == 1:
            break
        chain.append(d)
        k += 1
    chain.reverse()
    return tuple(chain)
