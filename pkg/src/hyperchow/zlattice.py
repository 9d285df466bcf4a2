"""Integer linear algebra and finitely generated abelian groups.

Integer matrices are tuples of row tuples holding Python ints, so entries
have unbounded precision. A finitely generated abelian group is stored in
Smith canonical form ``Z^d + Z/n_1 + ... + Z/n_k`` with ``n_1 | n_2 | ...``;
its elements are plain int tuples ``(free..., residues...)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterator, Optional, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
GroupElement = tuple[int, ...]


class NotInImage(ValueError):
    """No integral preimage exists."""


class InfiniteCokernel(ValueError):
    pass


class TorsionGenerator(ValueError):
    pass


# -- matrix helpers ---------------------------------------------------------

def as_matrix(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if ncols is not None and any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> IntMatrix:
    return tuple((0,) * c for _ in range(r))


def matmul(A: IntMatrix, B: IntMatrix, inner: Optional[int] = None) -> IntMatrix:
    """Matrix product; ``inner`` disambiguates shapes when A has no rows."""
    ncols = len(B[0]) if B else 0
    if not A:
        return ()
    return tuple(
        tuple(sum(a * B[k][j] for k, a in enumerate(row)) for j in range(ncols))
        for row in A
    )


def matvec(A: IntMatrix, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def transpose(A: IntMatrix, nrows_if_empty: int = 0) -> IntMatrix:
    if not A:
        return tuple(() for _ in range(nrows_if_empty))
    return tuple(zip(*A))


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(M: Sequence[Sequence[int]], ncols: Optional[int] = None
                      ) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U M V = D`` and U, V unimodular.

    D is diagonal with nonnegative entries forming a divisibility chain.
    Pivots are chosen with minimal absolute value to keep entries small.
    ``ncols`` is needed only when M has no rows.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        if best is None:
            break
    return as_matrix(U), as_matrix(A), as_matrix(V)


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form with zero rows dropped.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return ()
    n = len(A[0])
    r = 0
    for c in range(n):
        if r == len(A):
            break
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    done &= A[i][c] == 0
            if done:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return as_matrix([row for row in A if any(row)])


def integer_kernel(A: IntMatrix, ncols: int) -> IntMatrix:
    """Hermite basis (as rows) of the integer kernel ``{x in Z^n : A x = 0}``."""
    U, D, V = smith_normal_form(A, ncols)
    r = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    basis = [tuple(V[i][j] for i in range(ncols)) for j in range(r, ncols)]
    return hermite_normal_form(basis)


def solve_integer(A: IntMatrix, b: Sequence[int], ncols: int) -> Optional[tuple[int, ...]]:
    """Canonical integral solution of ``A x = b`` or None.

    The particular solution is reduced modulo the kernel's Hermite basis so
    that the answer depends only on ``(A, b)``.
    """
    U, D, V = smith_normal_form(A, ncols)
    c = matvec(U, b)
    y = [0] * ncols
    for i, ci in enumerate(c):
        d = D[i][i] if i < ncols else 0
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    x = list(matvec(V, y))
    for row in integer_kernel(A, ncols):
        p = next(j for j, v in enumerate(row) if v)
        q = x[p] // row[p]
        if q:
            x = [a - q * k for a, k in zip(x, row)]
    return tuple(x)


# -- groups -----------------------------------------------------------------

@dataclass(frozen=True)
class FgAbGroup:
    """``Z^rank + Z/torsion[0] + Z/torsion[1] + ...`` in canonical form."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        for n in self.torsion:
            if n < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {a}, {b} violate divisibility")

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def torsion_order(self) -> int:
        out = 1
        for n in self.torsion:
            out *= n
        return out

    def is_finite(self) -> bool:
        return self.rank == 0

    def normalize(self, x: Sequence[int]) -> GroupElement:
        if len(x) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(x)}")
        d = self.rank
        return tuple(x[:d]) + tuple(r % n for r, n in zip(x[d:], self.torsion))

    def is_normalized(self, x: Sequence[int]) -> bool:
        return tuple(x) == self.normalize(x)

    def zero(self) -> GroupElement:
        return (0,) * self.ngens

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.normalize([a + b for a, b in zip(x, y)])

    def sub(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.normalize([a - b for a, b in zip(x, y)])

    def neg(self, x: GroupElement) -> GroupElement:
        return self.normalize([-a for a in x])

    def scale(self, k: int, x: GroupElement) -> GroupElement:
        return self.normalize([k * a for a in x])

    def combination(self, coeffs: Sequence[int], elems: Sequence[GroupElement]) -> GroupElement:
        acc = [0] * self.ngens
        for k, e in zip(coeffs, elems):
            if k:
                for i, a in enumerate(e):
                    acc[i] += k * a
        return self.normalize(acc)

    def bar(self, x: GroupElement) -> tuple[int, ...]:
        """Image in the free quotient (drop torsion coordinates)."""
        return tuple(x[: self.rank])

    def is_torsion(self, x: GroupElement) -> bool:
        return not any(x[: self.rank])

    def torsion_elements(self) -> Iterator[GroupElement]:
        """All elements of the torsion subgroup, lexicographically."""
        free = (0,) * self.rank
        for res in product(*(range(n) for n in self.torsion)):
            yield free + tuple(res)

    def direct_sum(self, free_rank: int) -> "FgAbGroup":
        """``self + Z^free_rank`` with new free coordinates after the old."""
        return FgAbGroup(self.rank + free_rank, self.torsion)

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{n}" for n in self.torsion]
        return " + ".join(parts) if parts else "0"


def free_group(n: int) -> FgAbGroup:
    return FgAbGroup(n, ())


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by its matrix in canonical coordinates.

    ``matrix`` has ``target.ngens`` rows and ``source.ngens`` columns.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if len(self.matrix) != self.target.ngens:
            raise ValueError("matrix row count must match target generators")
        if any(len(r) != self.source.ngens for r in self.matrix):
            raise ValueError("matrix column count must match source generators")
        for j, n in enumerate(self.source.torsion):
            col = self.rank_column(self.source.rank + j)
            if any(self.target.normalize([n * c for c in col])):
                raise ValueError("map is not well defined on torsion generators")

    def rank_column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    def columns(self) -> list[GroupElement]:
        return [self.target.normalize(self.rank_column(j)) for j in range(self.source.ngens)]

    def __call__(self, x: Sequence[int]) -> GroupElement:
        return self.target.normalize(matvec(self.matrix, x))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self o other``."""
        if other.target != self.source:
            raise ValueError("incompatible composition")
        m = matmul(self.matrix, other.matrix) if self.matrix else ()
        if not self.matrix:
            m = ()
        elif not other.matrix or not other.matrix[0]:
            m = tuple(() for _ in self.matrix)
        # reduce torsion rows for a tidy matrix
        d = self.target.rank
        m = tuple(
            tuple(v % self.target.torsion[i - d] for v in row) if i >= d else row
            for i, row in enumerate(m)
        )
        return GroupHom(other.source, self.target, m)


def hom_from_columns(source_rank: int, target: FgAbGroup,
                     columns: Sequence[Sequence[int]]) -> GroupHom:
    """Map ``Z^source_rank -> target`` sending e_j to ``columns[j]``."""
    cols = [target.normalize(c) for c in columns]
    if len(cols) != source_rank:
        raise ValueError("one column per source generator required")
    matrix = tuple(tuple(c[i] for c in cols) for i in range(target.ngens))
    return GroupHom(free_group(source_rank), target, matrix)


def bar(group: FgAbGroup, x: GroupElement) -> tuple[int, ...]:
    return group.bar(x)


def _presentation_relations(f: GroupHom) -> tuple[IntMatrix, int]:
    """Relation matrix of ``coker f`` as a quotient of ``Z^(target gens)``."""
    T = f.target
    cols = [list(f.rank_column(j)) for j in range(f.source.ngens)]
    for j, n in enumerate(T.torsion):
        col = [0] * T.ngens
        col[T.rank + j] = n
        cols.append(col)
    R = tuple(tuple(c[i] for c in cols) for i in range(T.ngens))
    return R, len(cols)


def cokernel(f: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Cokernel of f in canonical form and the projection from the target."""
    T = f.target
    R, ncols = _presentation_relations(f)
    n = T.ngens
    if n == 0:
        G = FgAbGroup(0, ())
        return G, GroupHom(T, G, ())
    U, D, _ = smith_normal_form(R, ncols)
    diag = [D[i][i] if i < ncols else 0 for i in range(n)]
    free_rows = [i for i in range(n) if diag[i] == 0]
    tors_rows = [i for i in range(n) if diag[i] > 1]
    G = FgAbGroup(len(free_rows), tuple(diag[i] for i in tors_rows))
    # Hermite form on the free rows is an automorphism of the free part
    free = list(hermite_normal_form([U[i] for i in free_rows])) if free_rows else []
    rows = free + [tuple(x % diag[i] for x in U[i]) for i in tors_rows]
    return G, GroupHom(T, G, as_matrix(rows) if rows else ())


def dual_map(f: GroupHom) -> GroupHom:
    """``Hom(-, Z)`` applied to f, as a map of free duals ``target* -> source*``."""
    s, t = f.source.rank, f.target.rank
    block = tuple(tuple(f.matrix[i][j] for j in range(s)) for i in range(t))
    mat = tuple(tuple(block[i][j] for i in range(t)) for j in range(s))
    return GroupHom(free_group(t), free_group(s), mat)


def gale_dual(beta: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Gale dual ``beta^vee : Z^m -> DG(beta)``.

    Uses the free presentation ``Z^r -> Z^(d+r) -> N``; DG(beta) is the
    cokernel of the transpose of ``[B Q]`` and beta^vee is the projection
    restricted to the first m coordinates. The free block is put in Hermite
    form so the result is canonical up to the choices made above.
    """
    N = beta.target
    m = beta.source.ngens
    if beta.source.torsion:
        raise ValueError("beta must have a free source")
    cols = beta.columns()
    for i, c in enumerate(cols):
        if N.is_torsion(c):
            raise TorsionGenerator(f"b_{i + 1} = {c} is a torsion element")
    coker, _ = cokernel(beta)
    if not coker.is_finite():
        raise InfiniteCokernel(f"coker(beta) = {coker} is infinite")
    r = len(N.torsion)
    # [B Q]: (d+r) x (m+r)
    BQ = [list(beta.matrix[i]) + [0] * r for i in range(N.ngens)]
    for j, n in enumerate(N.torsion):
        BQ[N.rank + j][m + j] = n
    Mt = tuple(tuple(BQ[i][j] for i in range(N.ngens)) for j in range(m + r))
    dual_map_hom = GroupHom(free_group(N.ngens), free_group(m + r),
                            Mt if N.ngens else tuple(() for _ in range(m + r)))
    DG, proj = cokernel(dual_map_hom)
    A = [list(row[:m]) for row in proj.matrix]
    f = DG.rank
    free_block = hermite_normal_form([row for row in A[:f]]) if f else ()
    if f and len(free_block) != f:
        raise ArithmeticError("Gale dual free block lost rank")
    rows = [list(r) for r in free_block] + A[f:]
    return DG, GroupHom(free_group(m), DG, as_matrix(rows) if rows else ())


def solve_lift(f: GroupHom, target_value: Sequence[int], sign: int = 1) -> tuple[int, ...]:
    """Canonical integral psi with ``f(psi) = sign * target_value``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if f.source.torsion:
        raise ValueError("source must be free")
    T = f.target
    rhs = [sign * x for x in target_value]
    n = f.source.ngens
    rows = [list(r) + [0] * len(T.torsion) for r in f.matrix]
    for j, tor in enumerate(T.torsion):
        rows[T.rank + j][n + j] = tor
    sol = solve_integer(as_matrix(rows), rhs, n + len(T.torsion))
    if sol is None:
        raise NotInImage(f"{tuple(target_value)} is not in the image of the map")
    psi = sol[:n]
    # canonical modulo ker f, not modulo the auxiliary torsion variables
    K = _kernel_of_hom(f)
    psi = list(psi)
    for row in K:
        p = next(j for j, v in enumerate(row) if v)
        q = psi[p] // row[p]
        if q:
            psi = [a - q * k for a, k in zip(psi, row)]
    return tuple(psi)


def _kernel_of_hom(f: GroupHom) -> IntMatrix:
    """Hermite basis of ker f inside the free source."""
    T = f.target
    n = f.source.ngens
    rows = [list(r) + [0] * len(T.torsion) for r in f.matrix]
    for j, tor in enumerate(T.torsion):
        rows[T.rank + j][n + j] = tor
    K = integer_kernel(as_matrix(rows), n + len(T.torsion)) if rows else identity(n)
    return hermite_normal_form([row[:n] for row in K])


def kernel_of_hom(f: GroupHom) -> IntMatrix:
    return _kernel_of_hom(f)


def rational_coordinates(f_cols: Sequence[Sequence[int]], x: Sequence[int]) -> Optional[list[Fraction]]:
    from .linalg import solve
    return solve(f_cols, x)


def lcm_of_denominators(values: Sequence[Fraction]) -> int:
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def content(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
