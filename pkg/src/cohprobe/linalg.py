"""Exact sparse linear algebra over Q and F_p.

Every degreewise computation in the package reduces to rank / kernel /
complement questions over an exact field.  Vectors are sparse dicts
``{index: scalar}`` with no stored zeros; matrices are sparse maps
``(row, col) -> scalar``.  Pivoting is deterministic (leftmost nonzero),
so every downstream report is reproducible byte for byte.
"""

from __future__ import annotations

from fractions import Fraction


class Rationals:
    """Arbitrary precision rational field."""

    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of_int(self, n):
        return Fraction(n)

    def of_fraction(self, num, den):
        return Fraction(num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Integers mod a prime p, elements normalized to range(p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def of_int(self, n):
        return n % self.p

    def of_fraction(self, num, den):
        return num * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return self.name


QQ = Rationals()


def parse_field(spec):
    """Parse a field spec string: ``Q``, ``F32003``, ``Fp 32003``, ``Fp:32003``."""
    s = spec.strip().replace(":", " ")
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("Fp"):
        return PrimeField(int(s[2:].strip()))
    if s.startswith("F"):
        return PrimeField(int(s[1:].strip()))
    raise ValueError(f"unknown field spec {spec!r}")


class Mat:
    """Sparse matrix; entries holds only nonzero scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = dict(entries or {})

    @classmethod
    def from_row_list(cls, field, rows):
        entries = {}
        ncols = 0
        for i, row in enumerate(rows):
            ncols = max(ncols, len(row))
            for j, v in enumerate(row):
                fv = field.of_int(v) if isinstance(v, int) else v
                if not field.is_zero(fv):
                    entries[(i, j)] = fv
        return cls(len(rows), ncols, entries)

    @classmethod
    def from_columns(cls, nrows, columns):
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(nrows, len(columns), entries)

    def row_vectors(self):
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_vectors(self):
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def __eq__(self, other):
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, nnz={len(self.entries)})"


class SpanSolver:
    """Incremental row-space elimination, kept in fully reduced (RREF) form.

    Pivots are leftmost nonzero columns.  With ``track=True`` every stored
    row carries a certificate expressing it as a combination of the tagged
    vectors fed to :meth:`add`; untagged vectors (tag None) are treated as
    zero objects in certificates, which is exactly what reduction modulo a
    known subspace needs.
    """

    def __init__(self, field, track=False):
        self.field = field
        self.track = track
        self.pivot_rows = {}  # pivot col -> row dict (row[pivot] == 1)
        self.exprs = {}       # pivot col -> {tag: coeff}

    @property
    def rank(self):
        return len(self.pivot_rows)

    def pivot_cols(self):
        return sorted(self.pivot_rows)

    def _axpy(self, target, coeff, source):
        f = self.field
        for c, v in source.items():
            cur = target.get(c)
            nv = f.mul(coeff, v) if cur is None else f.add(cur, f.mul(coeff, v))
            if cur is not None and f.is_zero(nv):
                del target[c]
            elif not f.is_zero(nv):
                target[c] = nv

    def reduce(self, vec):
        """Reduce vec against the stored rows; returns (residue, expr).

        residue + sum(expr[tag] * original_vec[tag]) == vec, where untagged
        contributions are dropped from expr.
        """
        f = self.field
        residue = dict(vec)
        expr = {} if self.track else None
        while True:
            hits = residue.keys() & self.pivot_rows.keys()
            if not hits:
                break
            c = min(hits)
            coeff = residue[c]
            self._axpy(residue, f.neg(coeff), self.pivot_rows[c])
            if self.track:
                for tag, ec in self.exprs[c].items():
                    cur = expr.get(tag, f.zero())
                    nv = f.add(cur, f.mul(coeff, ec))
                    if f.is_zero(nv):
                        expr.pop(tag, None)
                    else:
                        expr[tag] = nv
        return residue, expr

    def add(self, vec, tag=None):
        """Insert vec into the span; returns True iff the rank increased."""
        f = self.field
        residue, expr = self.reduce(vec)
        if not residue:
            return False
        lead = min(residue)
        scale = f.inv(residue[lead])
        row = {c: f.mul(scale, v) for c, v in residue.items()}
        if self.track:
            row_expr = {}
            for t, ec in expr.items():
                row_expr[t] = f.neg(f.mul(scale, ec))
            if tag is not None:
                row_expr[tag] = f.add(row_expr.get(tag, f.zero()), scale)
                if f.is_zero(row_expr[tag]):
                    del row_expr[tag]
            self.exprs[lead] = row_expr
        # back-substitute so stored rows stay fully reduced
        for p, prow in self.pivot_rows.items():
            if lead in prow:
                coeff = prow[lead]
                self._axpy(prow, f.neg(coeff), row)
                if self.track:
                    for t, ec in self.exprs[lead].items():
                        cur = self.exprs[p].get(t, f.zero())
                        nv = f.sub(cur, f.mul(coeff, ec))
                        if f.is_zero(nv):
                            self.exprs[p].pop(t, None)
                        else:
                            self.exprs[p][t] = nv
        self.pivot_rows[lead] = row
        return True

    def contains(self, vec):
        residue, _ = self.reduce(vec)
        return not residue


def rref(field, m):
    """Reduced row echelon form and pivot columns of m. rank == len(pivots)."""
    solver = SpanSolver(field)
    for row in m.row_vectors():
        solver.add(row)
    pivots = solver.pivot_cols()
    entries = {}
    for i, p in enumerate(pivots):
        for j, v in solver.pivot_rows[p].items():
            entries[(i, j)] = v
    return Mat(m.rows, m.cols, entries), pivots


def rank(field, m):
    solver = SpanSolver(field)
    for row in m.row_vectors():
        solver.add(row)
    return solver.rank


def kernel_basis(field, m):
    """Deterministic basis of the right null space of m.

    One vector per free column j, in ascending j, with a 1 in position j
    and pivot back-fill; count == cols - rank.
    """
    _, pivots = _rref_rows(field, m)
    pivot_set = {p for p, _ in pivots}
    out = []
    one = field.one()
    for j in range(m.cols):
        if j in pivot_set:
            continue
        vec = {j: one}
        for p, row in pivots:
            v = row.get(j)
            if v is not None:
                vec[p] = field.neg(v)
        out.append(vec)
    return out


def _rref_rows(field, m):
    solver = SpanSolver(field)
    for row in m.row_vectors():
        solver.add(row)
    pivots = [(p, solver.pivot_rows[p]) for p in solver.pivot_cols()]
    return solver, pivots


def complement_basis(field, sub, ambient_dim):
    """Unit vectors extending a basis of span(sub) to the full space.

    Selection rule: smallest-index unit vectors not in the span so far,
    taken in index order.
    """
    solver = SpanSolver(field)
    for vec in sub:
        solver.add(vec)
    out = []
    one = field.one()
    for i in range(ambient_dim):
        if solver.add({i: one}):
            out.append({i: one})
    return out


def vec_add(field, a, b):
    out = dict(a)
    for c, v in b.items():
        cur = out.get(c)
        nv = v if cur is None else field.add(cur, v)
        if cur is not None and field.is_zero(nv):
            del out[c]
        elif not field.is_zero(nv):
            out[c] = nv
    return out


def vec_scale(field, coeff, a):
    if field.is_zero(coeff):
        return {}
    return {c: field.mul(coeff, v) for c, v in a.items()}
