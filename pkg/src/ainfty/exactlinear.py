"""Exact scalars, graded spaces, sparse maps and elimination kernels.

Everything downstream works over an exact field: the rationals (via
``fractions.Fraction``) or a prime field GF(p).  No floats anywhere; all
identities checked by the rest of the package are exact sign identities
and floating point would mask sign bugs.
"""

from fractions import Fraction


class GF:
    """The prime field with p elements.

    Elements are ``GFElem`` instances; the field object itself carries the
    modulus and builds elements.  Intended for speed-ups of large rank
    computations; the default field everywhere is QQ.
    """

    def __init__(self, p):
        if p < 2:
            raise ValueError("modulus must be a prime >= 2")
        for d in range(2, int(p ** 0.5) + 1):
            if p % d == 0:
                raise ValueError("modulus %d is not prime" % p)
        self.p = p

    def __call__(self, n):
        if isinstance(n, GFElem):
            if n.p != self.p:
                raise ValueError("mixing different prime fields")
            return n
        if isinstance(n, Fraction):
            return GFElem(n.numerator, self.p) / GFElem(n.denominator, self.p)
        return GFElem(n, self.p)

    @property
    def zero(self):
        return GFElem(0, self.p)

    @property
    def one(self):
        return GFElem(1, self.p)

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class GFElem:
    __slots__ = ("n", "p")

    def __init__(self, n, p):
        self.n = n % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, GFElem):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other
        if isinstance(other, int):
            return GFElem(other, self.p)
        if isinstance(other, Fraction):
            return GFElem(other.numerator, self.p) / GFElem(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElem(self.n + other.n, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElem(self.n - other.n, self.p)

    def __rsub__(self, other):
        other = self._lift(other)
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElem(self.n * other.n, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.n == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return self * GFElem(pow(other.n, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._lift(other)
        return other / self

    def __neg__(self):
        return GFElem(-self.n, self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.n == other % self.p
        return isinstance(other, GFElem) and self.p == other.p and self.n == other.n

    def __hash__(self):
        return hash((self.n, self.p))

    def __bool__(self):
        return self.n != 0

    def __repr__(self):
        return "%d (mod %d)" % (self.n, self.p)


class QQ_class:
    """The rational field; builds Fractions (kept in lowest terms by design)."""

    def __call__(self, n):
        return Fraction(n)

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, QQ_class)

    def __hash__(self):
        return hash("QQ")


QQ = QQ_class()


def koszul_sign(degrees, i, j):
    """The sign (-1)^(|x_i| + ... + |x_j| - (j-i+1)), indices 1-based inclusive.

    This is the universal sign bookkeeping device: the parity of the sum of
    shifted degrees over the range.  An empty range (i > j) gives +1.
    """
    if i > j:
        return 1
    if i < 1 or j > len(degrees):
        raise IndexError("koszul_sign range [%d..%d] out of bounds for %d degrees"
                         % (i, j, len(degrees)))
    total = sum(degrees[i - 1:j]) - (j - i + 1)
    return -1 if total % 2 else 1


def shifted_sum(degrees):
    """Sum of |x|-1 over a list of degrees (the exponent behind koszul_sign)."""
    return sum(degrees) - len(degrees)


# ---------------------------------------------------------------------------
# graded spaces and sparse maps
# ---------------------------------------------------------------------------

class GradedSpace:
    """A space with an ordered finite basis of (label, degree, weight) triples.

    Labels must be unique.  Basis order is fixed at construction (sorted
    lexicographically on labels unless ``keep_order``), so every downstream
    report is reproducible bit for bit.
    """

    def __init__(self, basis, keep_order=False):
        # basis: iterable of (label, degree) or (label, degree, weight)
        cleaned = []
        for entry in basis:
            if len(entry) == 2:
                label, degree = entry
                weight = None
            else:
                label, degree, weight = entry
            cleaned.append((label, degree, weight))
        if not keep_order:
            cleaned.sort(key=lambda t: str(t[0]))
        self.labels = [t[0] for t in cleaned]
        self.degree = {t[0]: t[1] for t in cleaned}
        self.weight = {t[0]: t[2] for t in cleaned}
        if len(self.degree) != len(cleaned):
            raise ValueError("duplicate labels in graded space")
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self.degree

    def slice(self, degree):
        return [lab for lab in self.labels if self.degree[lab] == degree]

    def degrees_present(self):
        return sorted(set(self.degree.values()))

    def __repr__(self):
        return "GradedSpace(%s)" % (", ".join(
            "%s:%d" % (lab, self.degree[lab]) for lab in self.labels))


class GradedMap:
    """Sparse linear map between graded spaces shifting degree by a constant.

    entries: dict (target_label, source_label) -> scalar.  Every entry must
    connect basis elements with deg(target) = deg(source) + degree.
    """

    def __init__(self, source, target, degree, entries, field=QQ):
        self.source = source
        self.target = target
        self.degree = degree
        self.field = field
        self.entries = {}
        for (t, s), c in entries.items():
            if not c:
                continue
            if s not in source.degree or t not in target.degree:
                raise ValueError("entry (%r, %r) not in the given bases" % (t, s))
            if target.degree[t] != source.degree[s] + degree:
                raise ValueError(
                    "entry (%r, %r) violates degree: %d != %d + %d"
                    % (t, s, target.degree[t], source.degree[s], degree))
            self.entries[(t, s)] = c

    def column(self, s):
        return {t: c for (t, s2), c in self.entries.items() if s2 == s}

    def apply(self, vec):
        """Apply to a sparse vector {source_label: scalar}."""
        out = {}
        for (t, s), c in self.entries.items():
            if s in vec:
                out[t] = out.get(t, self.field.zero) + c * vec[s]
        return {t: c for t, c in out.items() if c}

    def compose(self, other):
        """self after other."""
        if other.target is not self.source and other.target.labels != self.source.labels:
            raise ValueError("composition shape mismatch")
        entries = {}
        cols = {}
        for (t, s), c in self.entries.items():
            cols.setdefault(s, []).append((t, c))
        for (m, s), c in other.entries.items():
            for t, c2 in cols.get(m, ()):
                key = (t, s)
                entries[key] = entries.get(key, self.field.zero) + c2 * c
        entries = {k: v for k, v in entries.items() if v}
        return GradedMap(other.source, self.target, self.degree + other.degree,
                         entries, self.field)

    def is_zero(self):
        return not self.entries


class ChainComplexView:
    """Finitely many stored degree slices of a complex with a degree +1 map.

    spaces: dict degree -> list of labels (the basis of that slice).
    differential: dict degree -> dict (target_label, source_label) -> scalar,
    mapping slice d to slice d+1.  Labels must be unique across slices.
    """

    def __init__(self, spaces, differential, field=QQ):
        self.spaces = {d: list(basis) for d, basis in spaces.items()}
        self.differential = {d: dict(m) for d, m in differential.items()}
        self.field = field

    def degrees(self):
        return sorted(self.spaces)

    def check_d_squared(self):
        """Return None if d∘d = 0 on all stored slices, else a witness."""
        for d in self.degrees():
            if d + 1 not in self.differential or d not in self.differential:
                continue
            first = self.differential[d]
            second = self.differential[d + 1]
            acc = {}
            for (m, s), c in first.items():
                for (t, m2), c2 in second.items():
                    if m2 == m:
                        key = (t, s)
                        acc[key] = acc.get(key, self.field.zero) + c2 * c
            for (t, s), c in acc.items():
                if c:
                    return {"degree": d, "source": s, "target": t, "value": c}
        return None


# ---------------------------------------------------------------------------
# elimination kernels
# ---------------------------------------------------------------------------

def sparse_rank(rows, field=QQ):
    """Rank of a sparse matrix given as a list of {col: scalar} rows.

    Plain Gaussian elimination with exact division; rows are consumed
    destructively on a working copy.
    """
    pivots = {}  # col -> normalized row
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            # eliminate against known pivots, choosing a deterministic column
            col = min(row, key=str)
            if col in pivots:
                factor = row[col]
                for c2, v2 in pivots[col].items():
                    row[c2] = row.get(c2, field.zero) - factor * v2
                    if not row[c2]:
                        del row[c2]
            else:
                inv = row[col]
                pivots[col] = {c: v / inv for c, v in row.items()}
                rank += 1
                break
    return rank


def dense_rank(matrix, field=QQ):
    """Independent oracle: naive dense elimination over the field.

    matrix: list of lists of scalars.  Used to cross-check sparse_rank on
    every space of moderate total dimension.
    """
    m = [list(row) for row in matrix]
    rank = 0
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = m[row][col]
        m[row] = [v / inv for v in m[row]]
        for r in range(nrows):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
    return rank


def solve_linear(map_or_rows, target, field=QQ, columns=None):
    """Solve A x = target for one sparse solution, or return None.

    ``map_or_rows`` is either a GradedMap (solve map.apply(x) = target with
    target a {label: scalar} vector) or a list of {col: scalar} rows paired
    with a list ``target`` of scalars (row picture: rows are equations).
    Deterministic given basis order.
    """
    if isinstance(map_or_rows, GradedMap):
        gm = map_or_rows
        cols = columns if columns is not None else list(gm.source.labels)
        rows_idx = sorted({t for (t, _s) in gm.entries} | set(target), key=str)
        equations = []
        rhs = []
        for t in rows_idx:
            row = {}
            for s in cols:
                c = gm.entries.get((t, s))
                if c:
                    row[s] = c
            equations.append(row)
            rhs.append(target.get(t, field.zero))
        return solve_linear(equations, rhs, field=field)

    equations = [dict(r) for r in map_or_rows]
    rhs = list(target)
    pivots = []  # (col, row dict, rhs value), row normalized
    for row, b in zip(equations, rhs):
        for col, prow, pb in pivots:
            if col in row:
                f = row[col]
                for c2, v2 in prow.items():
                    row[c2] = row.get(c2, field.zero) - f * v2
                    if not row[c2]:
                        del row[c2]
                b = b - f * pb
        if row:
            col = min(row, key=str)
            inv = row[col]
            prow = {c: v / inv for c, v in row.items()}
            pivots.append((col, prow, b / inv))
        elif b:
            return None  # inconsistent equation 0 = b
    # back substitution, free variables set to zero
    solution = {}
    for col, prow, pb in reversed(pivots):
        val = pb
        for c, v in prow.items():
            if c != col and c in solution:
                val = val - v * solution[c]
        if val:
            solution[col] = val
    return solution


def homology_ranks(complex_view, degree_window, field=QQ):
    """Exact homology ranks of a ChainComplexView over a degree interval.

    Returns dict degree -> {"h": rank H, "z": dim ker, "b": dim im,
    "trusted": bool}; the two boundary degrees of the window are reported
    but flagged untrusted since incoming/outgoing differentials may be
    clipped by the window.
    """
    lo, hi = degree_window
    witness = complex_view.check_d_squared()
    if witness is not None:
        raise ValueError("differential does not square to zero at %r" % (witness,))
    out = {}
    for d in range(lo, hi + 1):
        basis = complex_view.spaces.get(d, [])
        n = len(basis)
        dmap = complex_view.differential.get(d, {})
        cols = {}
        for (t, s), c in dmap.items():
            cols.setdefault(s, {})[t] = c
        rank_d = sparse_rank([cols.get(s, {}) for s in basis], field)
        prev = complex_view.differential.get(d - 1, {})
        basis_prev = complex_view.spaces.get(d - 1, [])
        cols_prev = {}
        for (t, s), c in prev.items():
            cols_prev.setdefault(s, {})[t] = c
        rank_prev = sparse_rank([cols_prev.get(s, {}) for s in basis_prev], field)
        z = n - rank_d
        out[d] = {
            "h": z - rank_prev,
            "z": z,
            "b": rank_prev,
            "trusted": lo < d < hi,
        }
    return out
