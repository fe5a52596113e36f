"""Exact linear algebra over the integers.

Everything here works with arbitrary-precision Python ints; no floating
point is ever involved.  The module provides immutable integer matrices,
Smith normal form with unimodular transform tracking, exact linear solving
(over Z and modulo m), finitely generated abelian group invariants, and a
small "subquotient" engine that presents groups of the form L / R (L a
sublattice of Z^n, R a subgroup of L) together with canonical coordinates
and explicit generator vectors.  The subquotient engine is what lets the
rest of the package name homology classes, not just their isomorphism
types.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class DimensionMismatch(ValueError):
    """Matrix shapes are incompatible for the requested operation."""


class NotAComplex(ValueError):
    """Composite of consecutive boundary maps is nonzero."""


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major storage."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(rows: list[list[int]] | tuple) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        for row in rows:
            if len(row) != c:
                raise DimensionMismatch("ragged rows")
        return IntMatrix(r, c, tuple(int(x) for row in rows for x in row))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def diagonal(diag: list[int] | tuple, rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        n = len(diag)
        r = n if rows is None else rows
        c = n if cols is None else cols
        ent = [0] * (r * c)
        for i, d in enumerate(diag):
            if i < r and i < c:
                ent[i * c + i] = int(d)
        return IntMatrix(r, c, tuple(ent))

    @staticmethod
    def column(vec: list[int] | tuple) -> "IntMatrix":
        return IntMatrix(len(vec), 1, tuple(int(x) for x in vec))

    # -- access ------------------------------------------------------------

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row_list(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def col_list(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[int]]:
        return [self.row_list(i) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.entries, other.entries
        n, m, p = self.rows, self.cols, other.cols
        out = [0] * (n * p)
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            base = i * p
            for k in range(m):
                aik = arow[k]
                if aik:
                    brow = b[k * p : (k + 1) * p]
                    for j in range(p):
                        out[base + j] += aik * brow[j]
        return IntMatrix(n, p, tuple(out))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("addition shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        rows = [self.row_list(i) + other.row_list(i) for i in range(self.rows)]
        return IntMatrix(self.rows, self.cols + other.cols, tuple(x for row in rows for x in row))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack col mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def take_cols(self, idx: list[int]) -> "IntMatrix":
        rows = [[self.at(i, j) for j in idx] for i in range(self.rows)]
        return IntMatrix(self.rows, len(idx), tuple(x for row in rows for x in row))

    def apply_vec(self, vec: list[int] | tuple) -> list[int]:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum(self.entries[base + j] * vec[j] for j in range(self.cols)))
        return out

    def mod(self, m: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(x % m for x in self.entries))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """Decomposition U @ A @ V = diag(d), with U, V unimodular.

    `d` lists the nonzero invariant factors only (positive, each dividing
    the next); the rank of A is len(d).  `uinv` and `vinv` are the exact
    inverses of U and V, tracked during reduction.
    """

    d: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix
    uinv: IntMatrix
    vinv: IntMatrix
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return len(self.d)

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(list(self.d), self.rows, self.cols)


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Compute the Smith normal form of an integer matrix.

    Returns U, V (and their inverses) with U @ A @ V diagonal, diagonal
    entries non-negative and satisfying the divisibility chain
    d_1 | d_2 | ... .
    """
    n, m = a.rows, a.cols
    w = [a.row_list(i) for i in range(n)]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    ui = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    vi = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_swap(i, j):
        w[i], w[j] = w[j], w[i]
        u[i], u[j] = u[j], u[i]
        for r in ui:
            r[i], r[j] = r[j], r[i]

    def row_addmul(i, j, c):
        # row_i += c * row_j ; inverse op on uinv: col_j -= c * col_i
        wi, wj = w[i], w[j]
        for k in range(m):
            wi[k] += c * wj[k]
        uiw, ujw = u[i], u[j]
        for k in range(n):
            uiw[k] += c * ujw[k]
        for r in ui:
            r[j] -= c * r[i]

    def row_negate(i):
        w[i] = [-x for x in w[i]]
        u[i] = [-x for x in u[i]]
        for r in ui:
            r[i] = -r[i]

    def col_swap(i, j):
        for r in w:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vi[i], vi[j] = vi[j], vi[i]

    def col_addmul(i, j, c):
        # col_i += c * col_j ; inverse op on vinv: row_j -= c * row_i
        for r in w:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]
        vj, vii = vi[j], vi[i]
        for k in range(m):
            vj[k] -= c * vii[k]

    def col_negate(i):
        for r in w:
            r[i] = -r[i]
        for r in v:
            r[i] = -r[i]
        vi[i] = [-x for x in vi[i]]

    t = 0
    lim = min(n, m)
    while t < lim:
        # find a pivot of minimal absolute value in the trailing submatrix
        piv = None
        best = None
        for i in range(t, n):
            wi = w[i]
            for j in range(t, m):
                x = wi[j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            if w[t][t] < 0:
                row_negate(t)
            p = w[t][t]
            restarted = False
            for i in range(t + 1, n):
                if w[i][t] != 0:
                    q = w[i][t] // p
                    if q:
                        row_addmul(i, t, -q)
                    if w[i][t] != 0:
                        # remainder strictly smaller than pivot: promote it
                        row_swap(t, i)
                        restarted = True
                        break
            if restarted:
                continue
            for j in range(t + 1, m):
                if w[t][j] != 0:
                    q = w[t][j] // p
                    if q:
                        col_addmul(j, t, -q)
                    if w[t][j] != 0:
                        col_swap(t, j)
                        restarted = True
                        break
            if restarted:
                continue
            # cross is clear; enforce divisibility of the remaining block
            offender = None
            for i in range(t + 1, n):
                wi = w[i]
                for j in range(t + 1, m):
                    if wi[j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_addmul(t, offender, 1)
        t += 1

    diag = [w[i][i] for i in range(lim)]
    d = tuple(x for x in diag if x != 0)
    U = IntMatrix.from_rows(u) if n else IntMatrix.zeros(0, 0)
    Ui = IntMatrix.from_rows(ui) if n else IntMatrix.zeros(0, 0)
    V = IntMatrix.from_rows(v) if m else IntMatrix.zeros(0, 0)
    Vi = IntMatrix.from_rows(vi) if m else IntMatrix.zeros(0, 0)
    return SmithForm(d=d, U=U, V=V, uinv=Ui, vinv=Vi, rows=n, cols=m)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of {x : a @ x = 0}."""
    s = smith_normal_form(a)
    idx = list(range(s.rank, a.cols))
    return s.V.take_cols(idx)


def column_space_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of the lattice spanned by the columns of a."""
    s = smith_normal_form(a)
    cols = []
    for i in range(s.rank):
        col = [s.uinv.at(r, i) * s.d[i] for r in range(a.rows)]
        cols.append(col)
    if not cols:
        return IntMatrix.zeros(a.rows, 0)
    return IntMatrix.from_rows([[c[r] for c in cols] for r in range(a.rows)])


def solve_linear(a: IntMatrix, b: list[int] | tuple, modulus: int | None = None) -> tuple[int, ...] | None:
    """Solve a @ x = b exactly over Z, or modulo `modulus` if given.

    Returns one solution as a tuple, or None when the system is
    inconsistent.  The modular case reduces to an integer solve on the
    augmented matrix [a | modulus * I].
    """
    b = [int(x) for x in b]
    if len(b) != a.rows:
        raise DimensionMismatch("rhs length mismatch")
    if modulus is not None:
        if modulus <= 0:
            raise ValueError("modulus must be positive")
        aug = a.hstack(IntMatrix.diagonal([modulus] * a.rows))
        sol = solve_linear(aug, b)
        if sol is None:
            return None
        x = tuple(s % modulus for s in sol[: a.cols])
        check = a.apply_vec(list(x))
        assert all((ci - bi) % modulus == 0 for ci, bi in zip(check, b))
        return x
    s = smith_normal_form(a)
    c = s.U.apply_vec(b)
    y = [0] * a.cols
    for i in range(min(a.rows, a.cols)):
        di = s.d[i] if i < s.rank else 0
        if di:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
        elif c[i] != 0:
            return None
    for i in range(a.cols, a.rows):
        if c[i] != 0:
            return None
    x = s.V.apply_vec(y)
    assert a.apply_vec(x) == b
    return tuple(x)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """Canonical form of a finitely generated abelian group.

    free_rank copies of Z plus cyclic factors Z/d_i with each d_i >= 2 and
    d_i | d_{i+1}.
    """

    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError("torsion coefficients must be >= 2")
        for x, y in zip(self.torsion, self.torsion[1:]):
            if y % x != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")

    @staticmethod
    def zero() -> "FgAbelianGroup":
        return FgAbelianGroup(0, ())

    @staticmethod
    def free(n: int) -> "FgAbelianGroup":
        return FgAbelianGroup(n, ())

    @staticmethod
    def cyclic(n: int) -> "FgAbelianGroup":
        if n == 0:
            return FgAbelianGroup(1, ())
        n = abs(n)
        return FgAbelianGroup(0, ()) if n == 1 else FgAbelianGroup(0, (n,))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def pretty(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.pretty()


def cokernel(a: IntMatrix) -> FgAbelianGroup:
    """Z^rows / (column span of a)."""
    s = smith_normal_form(a)
    torsion = tuple(d for d in s.d if d >= 2)
    return FgAbelianGroup(free_rank=a.rows - s.rank, torsion=torsion)


# ---------------------------------------------------------------------------
# subquotients with named generators


@dataclass(frozen=True)
class Subquotient:
    """The group L / R with canonical coordinates.

    L is the sublattice of Z^ambient spanned by the columns of sub_basis
    (which must be a basis), and R the subgroup of L generated by the
    columns of the `relations` matrix expressed in ambient coordinates.

    Canonical coordinates list the torsion coordinates first (mod d_i,
    d_i >= 2) and then the free coordinates; this matches the order of
    `group.torsion` followed by `group.free_rank` copies of Z.
    """

    ambient_dim: int
    sub_basis: IntMatrix
    group: FgAbelianGroup
    _dfull: tuple[int, ...]
    _u: IntMatrix
    _uinv: IntMatrix

    @property
    def _rank(self) -> int:
        return len(self._dfull)

    def _positions(self) -> list[int]:
        """Map canonical coordinate index -> row index in U-coordinates."""
        tor = [i for i, d in enumerate(self._dfull) if d >= 2]
        free = list(range(self._rank, self.sub_basis.cols))
        return tor + free

    def class_of(self, z: list[int] | tuple) -> tuple[int, ...]:
        """Canonical coordinates of the class of an ambient vector z in L."""
        q = solve_linear(self.sub_basis, list(z))
        if q is None:
            raise ValueError("vector does not lie in the sublattice (not a cycle)")
        u = self._u.apply_vec(q)
        coords = []
        for pos in self._positions():
            if pos < self._rank:
                coords.append(u[pos] % self._dfull[pos])
            else:
                coords.append(u[pos])
        return tuple(coords)

    def generator(self, idx: int) -> tuple[int, ...]:
        """Ambient vector representing the idx-th canonical generator."""
        positions = self._positions()
        if not 0 <= idx < len(positions):
            raise IndexError("generator index out of range")
        e = [0] * self.sub_basis.cols
        e[positions[idx]] = 1
        q = self._uinv.apply_vec(e)
        return tuple(self.sub_basis.apply_vec(q))


def subquotient(sub_basis: IntMatrix, relations: IntMatrix) -> Subquotient:
    """Present L / R; `relations` columns are ambient vectors inside L."""
    if sub_basis.rows != relations.rows:
        raise DimensionMismatch("sub_basis and relations ambient dims differ")
    s = sub_basis.cols
    cols = []
    for j in range(relations.cols):
        w = solve_linear(sub_basis, relations.col_list(j))
        if w is None:
            raise ValueError("relation does not lie in the sublattice")
        cols.append(w)
    if cols:
        rel = IntMatrix.from_rows([[c[i] for c in cols] for i in range(s)])
    else:
        rel = IntMatrix.zeros(s, 0)
    sf = smith_normal_form(rel)
    dfull = tuple(sf.d)
    torsion = tuple(d for d in dfull if d >= 2)
    grp = FgAbelianGroup(free_rank=s - sf.rank, torsion=torsion)
    return Subquotient(
        ambient_dim=sub_basis.rows,
        sub_basis=sub_basis,
        group=grp,
        _dfull=dfull,
        _u=sf.U,
        _uinv=sf.uinv,
    )


# ---------------------------------------------------------------------------
# homology of integer chain complexes


def _check_complex(d_in: IntMatrix, d_out: IntMatrix) -> None:
    if d_in.rows != d_out.cols:
        raise DimensionMismatch(
            f"boundary shapes incompatible: d_in is {d_in.rows}x{d_in.cols}, d_out is {d_out.rows}x{d_out.cols}"
        )
    if not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out @ d_in != 0")


def homology_data(d_in: IntMatrix, d_out: IntMatrix) -> Subquotient:
    """ker(d_out)/im(d_in) with generator tracking.

    d_in : C_{k+1} -> C_k and d_out : C_k -> C_{k-1} as matrices acting on
    column vectors.
    """
    _check_complex(d_in, d_out)
    k = kernel_basis(d_out)
    return subquotient(k, d_in)


def homology_at(d_in: IntMatrix, d_out: IntMatrix) -> FgAbelianGroup:
    """Isomorphism type of ker(d_out)/im(d_in)."""
    return homology_data(d_in, d_out).group


@dataclass(frozen=True)
class IntComplex:
    """A bounded complex of free modules presented by integer matrices.

    Exactly one of `down`, `up` is set.  `down[k]` is the boundary
    C_{k+1} -> C_k of a chain complex; `up[k]` is the coboundary
    C^k -> C^{k+1} of a cochain complex.  `modulus` 0 means coefficients
    in Z; modulus 2 means the matrices are to be read mod 2 (homology is
    then computed as an integer subquotient that encodes the mod-2
    groups exactly).
    """

    dims: tuple[int, ...]
    down: tuple[IntMatrix, ...] | None = None
    up: tuple[IntMatrix, ...] | None = None
    modulus: int = 0

    def __post_init__(self) -> None:
        if (self.down is None) == (self.up is None):
            raise ValueError("exactly one of down/up must be given")
        maps = self.down if self.down is not None else self.up
        if len(maps) != max(len(self.dims) - 1, 0):
            raise DimensionMismatch("wrong number of structure maps")
        for k, m in enumerate(maps):
            src, dst = (k + 1, k) if self.down is not None else (k, k + 1)
            if (m.rows, m.cols) != (self.dims[dst], self.dims[src]):
                raise DimensionMismatch(f"map {k} has shape {m.rows}x{m.cols}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def _pair(self, k: int) -> tuple[IntMatrix, IntMatrix]:
        """(d_in, d_out) at position k for either orientation."""
        if not 0 <= k <= self.top:
            raise IndexError(f"degree {k} outside complex of top degree {self.top}")
        if self.down is not None:
            d_in = self.down[k] if k < self.top else IntMatrix.zeros(self.dims[k], 0)
            d_out = self.down[k - 1] if k >= 1 else IntMatrix.zeros(0, self.dims[0])
        else:
            d_in = self.up[k - 1] if k >= 1 else IntMatrix.zeros(self.dims[k], 0)
            d_out = self.up[k] if k < self.top else IntMatrix.zeros(0, self.dims[k])
        return d_in, d_out

    def homology_data(self, k: int) -> "Subquotient":
        d_in, d_out = self._pair(k)
        if self.modulus == 0:
            return homology_data(d_in, d_out)
        if self.modulus == 2:
            return homology_data_mod2(d_in, d_out)
        raise ValueError(f"unsupported modulus {self.modulus}")

    def homology(self, k: int) -> FgAbelianGroup:
        return self.homology_data(k).group


def f2_kernel_basis(a: IntMatrix) -> list[list[int]]:
    """Basis of the mod-2 kernel of a, as 0/1 integer vectors."""
    rows = [[x % 2 for x in a.row_list(i)] for i in range(a.rows)]
    n, m = a.rows, a.cols
    pivots: dict[int, int] = {}
    r = 0
    for j in range(m):
        sel = None
        for i in range(r, n):
            if rows[i][j]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(n):
            if i != r and rows[i][j]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[r])]
        pivots[j] = r
        r += 1
    basis = []
    for j in range(m):
        if j in pivots:
            continue
        vec = [0] * m
        vec[j] = 1
        for pj, pr in pivots.items():
            if rows[pr][j]:
                vec[pj] = 1
        basis.append(vec)
    return basis


def f2_rank(a: IntMatrix) -> int:
    """Rank of a over the field with two elements."""
    return a.cols - len(f2_kernel_basis(a))


def homology_data_mod2(d_in: IntMatrix, d_out: IntMatrix) -> Subquotient:
    """Homology with mod-2 coefficients of integer boundary matrices.

    Presents {z : d_out z = 0 mod 2} / (im d_in + 2 Z^n) as a subquotient
    of Z^n, so classes of integer vectors can be named.  Every element has
    order dividing 2.
    """
    if d_in.rows != d_out.cols:
        raise DimensionMismatch("boundary shapes incompatible")
    if not all(x % 2 == 0 for x in (d_out @ d_in).entries):
        raise NotAComplex("d_out @ d_in != 0 mod 2")
    n = d_in.rows
    lifts = f2_kernel_basis(d_out)
    gens = [[v[i] for v in lifts] for i in range(n)]
    gen_mat = IntMatrix.from_rows(gens) if lifts else IntMatrix.zeros(n, 0)
    lattice = column_space_basis(gen_mat.hstack(IntMatrix.diagonal([2] * n)))
    relations = d_in.hstack(IntMatrix.diagonal([2] * n))
    return subquotient(lattice, relations)
