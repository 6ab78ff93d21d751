"""Dense matrices over the rings of this package."""
from __future__ import annotations

import itertools

from .ff import GF
from .poly import Poly, PolyRing, poly_lcm
from .ratfunc import FracField


def is_field(ring) -> bool:
    return isinstance(ring, (GF, FracField))


def _size(x) -> int:
    """Crude complexity measure used for pivot selection."""
    if isinstance(x, Poly):
        return len(x.c)
    num = getattr(x, "num", None)
    if num is not None:
        return len(num.c) + len(x.den.c)
    return 0


class Matrix:
    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows, ncols: int | None = None):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)

    # -- construction ------------------------------------------------------
    @classmethod
    def zero(cls, ring, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        m = cls.zero(ring, n)
        for i in range(n):
            m.rows[i][i] = ring.one
        return m

    @classmethod
    def from_list(cls, ring, rows) -> "Matrix":
        return cls(ring, [[ring(x) for x in r] for r in rows])

    @classmethod
    def scalar(cls, ring, n: int, s) -> "Matrix":
        m = cls.zero(ring, n)
        for i in range(n):
            m.rows[i][i] = ring(s)
        return m

    def copy(self) -> "Matrix":
        return Matrix(self.ring, self.rows, self.ncols)

    # -- access ------------------------------------------------------------
    def __getitem__(self, ij):
        if isinstance(ij, tuple):
            i, j = ij
            return self.rows[i][j]
        return self.rows[ij]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def entries(self):
        for r in self.rows:
            yield from r

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(tuple(hash(x) for x in self.entries()))

    def __repr__(self):
        from .printing import to_str
        return "[" + ", ".join("[" + ", ".join(to_str(x) for x in r) + "]" for r in self.rows) + "]"

    def is_zero(self):
        return all(not x for x in self.entries())

    def is_identity(self):
        one = self.ring.one
        return self.is_square() and all(
            (x == one) if i == j else (not x)
            for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_scalar(self):
        if not self.is_square():
            return False
        d = self.rows[0][0] if self.nrows else None
        return all((x == d) if i == j else (not x)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols)

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in r] for r in self.rows], self.ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            cols = list(zip(*other.rows)) if other.rows else []
            zero = self.ring.zero
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = zero
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(self.ring, out, other.ncols)
        return Matrix(self.ring, [[a * other for a in r] for r in self.rows], self.ncols)

    def __rmul__(self, other):
        return Matrix(self.ring, [[other * a for a in r] for r in self.rows], self.ncols)

    def __pow__(self, e: int) -> "Matrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.ring, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def apply(self, vec: list) -> list:
        zero = self.ring.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [list(c) for c in zip(*self.rows)], self.nrows) if self.rows else \
            Matrix(self.ring, [], 0)

    def map(self, fn, ring=None) -> "Matrix":
        return Matrix(ring or self.ring, [[fn(x) for x in r] for r in self.rows], self.ncols)

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def trace(self):
        acc = self.ring.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    # -- determinants and polynomials --------------------------------------
    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self.ring.one
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        if is_field(self.ring):
            return self._det_gauss()
        return self._det_bareiss()

    def _det_gauss(self):
        a = [list(r) for r in self.rows]
        n = self.nrows
        det = self.ring.one
        for k in range(n):
            piv = _choose_pivot(a, k, range(k, n))
            if piv is None:
                return self.ring.zero
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            pk = a[k][k]
            det = det * pk
            inv = pk.inverse()
            for i in range(k + 1, n):
                if a[i][k]:
                    f = a[i][k] * inv
                    for j in range(k + 1, n):
                        if a[k][j]:
                            a[i][j] = a[i][j] - f * a[k][j]
        return det

    def _det_bareiss(self):
        a = [list(r) for r in self.rows]
        n = self.nrows
        sign = 1
        prev = self.ring.one
        for k in range(n - 1):
            if not a[k][k]:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return self.ring.zero
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                    a[i][j] = num / prev if not _is_one(prev) else num
            prev = a[k][k]
        d = a[n - 1][n - 1]
        return -d if sign < 0 else d

    def charpoly(self, var: str = "x") -> Poly:
        """Characteristic polynomial det(x*I - A) by Berkowitz (division free)."""
        R = PolyRing(self.ring, var)
        n = self.nrows
        if n == 0:
            return R.one
        a = self.rows
        one = self.ring.one
        zero = self.ring.zero
        # vector of coefficients, highest degree first
        vec = [one, -a[0][0]]
        for k in range(1, n):
            # A_k is leading (k+1)x(k+1); R = row k, cols < k; C = col k, rows < k
            rrow = a[k][:k]
            ccol = [a[i][k] for i in range(k)]
            akk = a[k][k]
            sub = [row[:k] for row in a[:k]]
            # Toeplitz entries: 1, -a_kk, -R C, -R A C, ...
            t = [one, -akk]
            v = ccol
            for _ in range(k):
                s = zero
                for x, y in zip(rrow, v):
                    if x and y:
                        s = s + x * y
                t.append(-s)
                v = [sum_products(row, v, zero) for row in sub]
            # multiply Toeplitz (k+2) x (k+1) lower-triangular by vec
            new = []
            for i in range(k + 2):
                s = zero
                for j in range(min(i, k) + 1):
                    if j < len(vec) and t[i - j] and vec[j]:
                        s = s + t[i - j] * vec[j]
                new.append(s)
            vec = new
        return Poly(R, list(reversed(vec)))

    def minpoly(self, var: str = "x") -> Poly:
        """Minimal polynomial over a field, as the lcm of local Krylov relations."""
        if not is_field(self.ring):
            raise ValueError("minimal polynomial requires a field")
        R = PolyRing(self.ring, var)
        n = self.nrows
        mu = R.one
        for j in range(n):
            e = [self.ring.zero] * n
            e[j] = self.ring.one
            rel = _krylov_relation(self, e, R)
            mu = poly_lcm(mu, rel)
            if mu.degree() == n:
                break
        return mu

    def evaluate_poly(self, f: Poly) -> "Matrix":
        """f(A) by Horner's rule."""
        n = self.nrows
        acc = Matrix.zero(self.ring, n)
        for c in reversed(f.c):
            acc = acc * self + Matrix.scalar(self.ring, n, c)
        return acc

    # -- elimination over a field -----------------------------------------
    def rref(self):
        """Reduced row echelon form and pivot columns (field entries)."""
        a = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(self.ncols):
            piv = _choose_pivot(a, col, range(row, self.nrows))
            if piv is None:
                continue
            a[row], a[piv] = a[piv], a[row]
            inv = a[row][col].inverse()
            a[row] = [x * inv if x else x for x in a[row]]
            for i in range(self.nrows):
                if i != row and a[i][col]:
                    f = a[i][col]
                    a[i] = [x - f * y if y else x for x, y in zip(a[i], a[row])]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        return Matrix(self.ring, a, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list:
        """Basis of the right kernel {v : A v = 0} as a list of vectors."""
        red, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [self.ring.zero] * self.ncols
            v[f] = self.ring.one
            for i, pc in enumerate(pivots):
                v[pc] = -red.rows[i][f]
            basis.append(v)
        return basis

    def solve(self, b: list):
        """One solution of A x = b, or None if inconsistent."""
        aug = Matrix(self.ring, [r + [bi] for r, bi in zip(self.rows, b)], self.ncols + 1)
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [self.ring.zero] * self.ncols
        for i, pc in enumerate(pivots):
            x[pc] = red.rows[i][self.ncols]
        return x

    def inverse(self) -> "Matrix":
        n = self.nrows
        if is_field(self.ring):
            aug = Matrix(self.ring, [r + [self.ring.one if i == j else self.ring.zero for j in range(n)]
                                     for i, r in enumerate(self.rows)], 2 * n)
            red, pivots = aug.rref()
            if pivots[:n] != list(range(n)) or len(pivots) < n:
                raise ZeroDivisionError("singular matrix")
            return Matrix(self.ring, [r[n:] for r in red.rows], n)
        raise ValueError("inverse requires a field; use adjugate() over a domain")

    def adjugate(self) -> "Matrix":
        n = self.nrows
        if n == 1:
            return Matrix.identity(self.ring, 1)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = self.submatrix([k for k in range(n) if k != j], [k for k in range(n) if k != i])
                d = minor.det()
                row.append(-d if (i + j) % 2 else d)
            out.append(row)
        return Matrix(self.ring, out, n)

    # -- structural constructions -----------------------------------------
    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for r in self.rows:
            for s in other.rows:
                out.append([a * b for a in r for b in s])
        return Matrix(self.ring, out, self.ncols * other.ncols)

    def block_diag(self, other: "Matrix") -> "Matrix":
        z = self.ring.zero
        out = [r + [z] * other.ncols for r in self.rows]
        out += [[z] * self.ncols + r for r in other.rows]
        return Matrix(self.ring, out, self.ncols + other.ncols)

    def compound(self, k: int) -> "Matrix":
        """k-th compound matrix (minors indexed by lexicographic k-subsets)."""
        n = self.nrows
        subsets = list(itertools.combinations(range(n), k))
        if k == 0:
            return Matrix.identity(self.ring, 1)
        if not subsets:
            return Matrix(self.ring, [], 0)
        out = [[self.submatrix(rs, cs).det() for cs in subsets] for rs in subsets]
        return Matrix(self.ring, out, len(subsets))


def sum_products(row, vec, zero):
    acc = zero
    for x, y in zip(row, vec):
        if x and y:
            acc = acc + x * y
    return acc


def _is_one(x):
    try:
        return x.is_one()
    except AttributeError:
        return x == 1


def _choose_pivot(a, col, candidates):
    best, best_size = None, None
    for i in candidates:
        x = a[i][col]
        if x:
            s = _size(x)
            if best is None or s < best_size:
                best, best_size = i, s
                if s <= 1:
                    break
    return best


def _krylov_relation(A: Matrix, v: list, R: PolyRing) -> Poly:
    """Monic polynomial f of least degree with f(A) v = 0."""
    K = A.ring
    n = A.nrows
    # maintain an echelon basis of the Krylov vectors with their expression
    # in terms of the powers A^i v
    basis = []  # (pivot index, reduced vector, combination coefficients)
    cur = list(v)
    k = 0
    while True:
        vec = list(cur)
        comb = [K.zero] * (k + 1)
        comb[k] = K.one
        for piv, bvec, bcomb in basis:
            c = vec[piv]
            if c:
                vec = [x - c * y for x, y in zip(vec, bvec)]
                comb = [x - c * (bcomb[i] if i < len(bcomb) else K.zero) for i, x in enumerate(comb)]
        piv = next((i for i in range(n) if vec[i]), None)
        if piv is None:
            return Poly(R, comb)
        inv = vec[piv].inverse()
        vec = [x * inv for x in vec]
        comb = [x * inv for x in comb]
        # keep basis reduced at the new pivot
        new_basis = []
        for bp, bvec, bcomb in basis:
            c = bvec[piv]
            if c:
                bvec = [x - c * y for x, y in zip(bvec, vec)]
                m = max(len(bcomb), len(comb))
                bcomb = [(bcomb[i] if i < len(bcomb) else K.zero) - c * (comb[i] if i < len(comb) else K.zero)
                         for i in range(m)]
            new_basis.append((bp, bvec, bcomb))
        new_basis.append((piv, vec, comb))
        basis = new_basis
        cur = A.apply(cur)
        k += 1
