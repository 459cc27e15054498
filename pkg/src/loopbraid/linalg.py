"""Exact dense linear algebra over a fixed cyclotomic field.

Everything here is exact: Gaussian elimination uses field division with
first-nonzero pivoting (no stability concerns over an exact field),
char_poly is Faddeev-LeVerrier, min_poly comes from Krylov sequences.
Vectors are plain tuples of CycNum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .cyclotomic import CycNum, dot, omega
from .errors import (
    ConductorMismatch,
    DimMismatch,
    NotOrderThree,
    SingularMatrix,
)

Vector = tuple[CycNum, ...]


def _lift(value, conductor: int) -> CycNum:
    if isinstance(value, CycNum):
        if value.conductor != conductor:
            raise ConductorMismatch(
                f"entry conductor {value.conductor} != matrix conductor {conductor}"
            )
        return value
    return CycNum.from_rational(value, conductor)


class CMatrix:
    """A square matrix over Q(zeta_N) with exact entries."""

    __slots__ = ("dim", "conductor", "rows")

    def __init__(self, rows: Sequence[Sequence], conductor: int | None = None):
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise DimMismatch("matrix must be square and nonempty")
        if conductor is None:
            conductor = next(
                (e.conductor for r in rows for e in r if isinstance(e, CycNum)), 1
            )
        self_rows = tuple(tuple(_lift(e, conductor) for e in r) for r in rows)
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "rows", self_rows)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("CMatrix is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, dim: int, conductor: int = 1) -> "CMatrix":
        one, zero = CycNum.one(conductor), CycNum.zero(conductor)
        return cls(
            [[one if i == j else zero for j in range(dim)] for i in range(dim)],
            conductor,
        )

    @classmethod
    def zero(cls, dim: int, conductor: int = 1) -> "CMatrix":
        z = CycNum.zero(conductor)
        return cls([[z] * dim for _ in range(dim)], conductor)

    @classmethod
    def diagonal(cls, entries: Sequence, conductor: int | None = None) -> "CMatrix":
        if conductor is None:
            conductor = next(
                (e.conductor for e in entries if isinstance(e, CycNum)), 1
            )
        d = len(entries)
        z = CycNum.zero(conductor)
        return cls(
            [
                [_lift(entries[i], conductor) if i == j else z for j in range(d)]
                for i in range(d)
            ],
            conductor,
        )

    @classmethod
    def build(cls, dim: int, conductor: int, f: Callable[[int, int], object]) -> "CMatrix":
        return cls([[f(i, j) for j in range(dim)] for i in range(dim)], conductor)

    # -- structure -------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> CycNum:
        return self.rows[ij[0]][ij[1]]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.dim)]

    def transpose(self) -> "CMatrix":
        return CMatrix(
            [[self.rows[j][i] for j in range(self.dim)] for i in range(self.dim)],
            self.conductor,
        )

    def flatten(self) -> Vector:
        """Row-major flattening into a d^2 vector."""
        return tuple(e for r in self.rows for e in r)

    def promote(self, m: int) -> "CMatrix":
        if m == self.conductor:
            return self
        return CMatrix([[e.promote(m) for e in r] for r in self.rows], m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.conductor == other.conductor
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.dim, self.conductor, self.rows))

    def __repr__(self) -> str:
        body = "\n ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows)
        return f"CMatrix({self.dim}, N={self.conductor},\n {body})"

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for r in self.rows for e in r)

    @property
    def is_identity(self) -> bool:
        return self == CMatrix.identity(self.dim, self.conductor)

    def is_scalar(self) -> CycNum | None:
        """The scalar c when self == c*I, else None."""
        c = self.rows[0][0]
        for i in range(self.dim):
            for j in range(self.dim):
                e = self.rows[i][j]
                if i == j:
                    if e != c:
                        return None
                elif not e.is_zero:
                    return None
        return c

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "CMatrix"):
        if self.dim != other.dim:
            raise DimMismatch(f"dims {self.dim} and {other.dim} differ")
        if self.conductor != other.conductor:
            raise ConductorMismatch(
                f"conductors {self.conductor} and {other.conductor} differ"
            )

    def __add__(self, other: "CMatrix") -> "CMatrix":
        self._check(other)
        return CMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.conductor,
        )

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        self._check(other)
        return CMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.conductor,
        )

    def __neg__(self) -> "CMatrix":
        return CMatrix([[-e for e in r] for r in self.rows], self.conductor)

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        self._check(other)
        cols = other.columns()
        return CMatrix(
            [[dot(row, col) for col in cols] for row in self.rows], self.conductor
        )

    def scalar_mul(self, c) -> "CMatrix":
        c = _lift(c, self.conductor)
        return CMatrix([[c * e for e in r] for r in self.rows], self.conductor)

    def __mul__(self, c) -> "CMatrix":
        return self.scalar_mul(c)

    __rmul__ = __mul__

    def apply(self, vec: Sequence[CycNum]) -> Vector:
        if len(vec) != self.dim:
            raise DimMismatch("vector length mismatch")
        return tuple(dot(row, vec) for row in self.rows)

    def matpow(self, e: int) -> "CMatrix":
        if e < 0:
            return self.inverse().matpow(-e)
        result = CMatrix.identity(self.dim, self.conductor)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def kron(self, other: "CMatrix") -> "CMatrix":
        """Kronecker product, conductors must already agree."""
        if self.conductor != other.conductor:
            raise ConductorMismatch("promote to a common conductor before kron")
        d1, d2 = self.dim, other.dim
        return CMatrix.build(
            d1 * d2,
            self.conductor,
            lambda i, j: self.rows[i // d2][j // d2] * other.rows[i % d2][j % d2],
        )

    # -- exact decompositions ----------------------------------------------------

    def trace(self) -> CycNum:
        acc = CycNum.zero(self.conductor)
        for i in range(self.dim):
            acc = acc + self.rows[i][i]
        return acc

    def det(self) -> CycNum:
        rows = [list(r) for r in self.rows]
        d = self.dim
        sign = 1
        det = CycNum.one(self.conductor)
        for col in range(d):
            piv = next((r for r in range(col, d) if not rows[r][col].is_zero), None)
            if piv is None:
                return CycNum.zero(self.conductor)
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                sign = -sign
            p = rows[col][col]
            det = det * p
            pinv = p.inv()
            for r in range(col + 1, d):
                f = rows[r][col] * pinv
                if not f.is_zero:
                    rows[r] = [
                        rows[r][j] - f * rows[col][j] for j in range(d)
                    ]
        return det if sign == 1 else -det

    def inverse(self) -> "CMatrix":
        d = self.dim
        one = CycNum.one(self.conductor)
        zero = CycNum.zero(self.conductor)
        aug = [
            list(r) + [one if i == j else zero for j in range(d)]
            for i, r in enumerate(self.rows)
        ]
        for col in range(d):
            piv = next((r for r in range(col, d) if not aug[r][col].is_zero), None)
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            aug[col], aug[piv] = aug[piv], aug[col]
            pinv = aug[col][col].inv()
            aug[col] = [pinv * e for e in aug[col]]
            for r in range(d):
                if r != col and not aug[r][col].is_zero:
                    f = aug[r][col]
                    aug[r] = [aug[r][j] - f * aug[col][j] for j in range(2 * d)]
        return CMatrix([r[d:] for r in aug], self.conductor)

    def rank(self) -> int:
        _, pivots = rref([list(r) for r in self.rows])
        return len(pivots)

    def kernel(self) -> list[Vector]:
        """Exact basis of the null space; empty iff invertible."""
        reduced, pivots = rref([list(r) for r in self.rows])
        d = self.dim
        zero = CycNum.zero(self.conductor)
        one = CycNum.one(self.conductor)
        free = [j for j in range(d) if j not in pivots]
        basis = []
        for j in free:
            v = [zero] * d
            v[j] = one
            for r, pc in enumerate(pivots):
                v[pc] = -reduced[r][j]
            basis.append(tuple(v))
        return basis

    def char_poly(self) -> "FieldPoly":
        """Monic characteristic polynomial via Faddeev-LeVerrier."""
        d = self.dim
        ident = CMatrix.identity(d, self.conductor)
        coeffs = [CycNum.one(self.conductor)]  # highest degree first
        m = CMatrix.zero(d, self.conductor)
        for k in range(1, d + 1):
            m = self @ (m + ident.scalar_mul(coeffs[-1]))
            coeffs.append(m.trace() * Fraction(-1, k))
        return FieldPoly(tuple(reversed(coeffs)))

    def min_poly(self) -> "FieldPoly":
        """Monic minimal polynomial: lcm of Krylov annihilators of e_1..e_d."""
        d = self.dim
        n = self.conductor
        best = FieldPoly((CycNum.one(n),))
        zero = CycNum.zero(n)
        one = CycNum.one(n)
        for idx in range(d):
            if best.degree() == d:
                break
            v = tuple(one if i == idx else zero for i in range(d))
            ann = self._krylov_annihilator(v)
            best = best.lcm(ann)
        return best

    def _krylov_annihilator(self, v: Vector) -> "FieldPoly":
        d = self.dim
        n = self.conductor
        # echelon rows plus the combination over the original Krylov vectors
        echelon: list[tuple[list[CycNum], list[CycNum], int]] = []
        vec = list(v)
        combo_len = d + 1
        k = 0
        while True:
            combo = [CycNum.zero(n) for _ in range(combo_len)]
            combo[k] = CycNum.one(n)
            w = list(vec)
            for row, rcombo, piv in echelon:
                f = w[piv]
                if not f.is_zero:
                    w = [a - f * b for a, b in zip(w, row)]
                    combo = [a - f * b for a, b in zip(combo, rcombo)]
            piv = next((i for i, e in enumerate(w) if not e.is_zero), None)
            if piv is None:
                return FieldPoly(tuple(combo[: k + 1]))
            pinv = w[piv].inv()
            echelon.append(
                ([pinv * e for e in w], [pinv * e for e in combo], piv)
            )
            vec = list(self.apply(vec))
            k += 1

    def is_diagonalizable(self) -> bool:
        """Squarefree minimal polynomial test."""
        mp = self.min_poly()
        return mp.gcd(mp.derivative()).degree() == 0


class FieldPoly:
    """A polynomial over a cyclotomic field, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[CycNum]):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1].is_zero:
            cs.pop()
        if not cs:
            raise ValueError("need at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("FieldPoly is immutable")

    @classmethod
    def from_rationals(cls, values: Sequence, conductor: int = 1) -> "FieldPoly":
        return cls([_lift(v, conductor) for v in values])

    @property
    def conductor(self) -> int:
        return self.coeffs[0].conductor

    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1].is_one

    @property
    def is_zero(self) -> bool:
        return self.degree() == -1

    def monic(self) -> "FieldPoly":
        if self.is_zero:
            return self
        lead = self.coeffs[-1].inv()
        return FieldPoly([lead * c for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "FieldPoly[" + ", ".join(map(str, self.coeffs)) + "]"

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        z = CycNum.zero(self.conductor)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return FieldPoly([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "FieldPoly") -> "FieldPoly":
        return self + FieldPoly([-c for c in other.coeffs])

    def __mul__(self, other: "FieldPoly") -> "FieldPoly":
        z = CycNum.zero(self.conductor)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return FieldPoly(out)

    def scalar_mul(self, c: CycNum) -> "FieldPoly":
        return FieldPoly([c * x for x in self.coeffs])

    def divmod(self, other: "FieldPoly") -> tuple["FieldPoly", "FieldPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        z = CycNum.zero(self.conductor)
        r = list(self.coeffs)
        q = [z] * max(1, len(r) - len(other.coeffs) + 1)
        db = other.degree()
        lead = other.coeffs[-1].inv()
        for i in range(len(r) - 1, db - 1, -1):
            if r[i].is_zero:
                continue
            c = r[i] * lead
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = r[i - db + j] - c * other.coeffs[j]
        return FieldPoly(q), FieldPoly(r[:db] if db > 0 else [z])

    def __mod__(self, other: "FieldPoly") -> "FieldPoly":
        return self.divmod(other)[1]

    def divides(self, other: "FieldPoly") -> bool:
        return (other % self).is_zero

    def gcd(self, other: "FieldPoly") -> "FieldPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def lcm(self, other: "FieldPoly") -> "FieldPoly":
        if self.is_zero or other.is_zero:
            return FieldPoly([CycNum.zero(self.conductor)])
        g = self.gcd(other)
        q, _ = (self * other).divmod(g)
        return q.monic()

    def derivative(self) -> "FieldPoly":
        if len(self.coeffs) == 1:
            return FieldPoly([CycNum.zero(self.conductor)])
        return FieldPoly(
            [c * k for k, c in enumerate(self.coeffs) if k > 0]
        )

    def eval_scalar(self, x: CycNum) -> CycNum:
        acc = CycNum.zero(self.conductor)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, x: CMatrix) -> CMatrix:
        acc = CMatrix.zero(x.dim, x.conductor)
        for c in reversed(self.coeffs):
            acc = (acc @ x) + CMatrix.identity(x.dim, x.conductor).scalar_mul(c)
        return acc


# -- generic elimination ------------------------------------------------------


def rref(rows: list[list[CycNum]]) -> tuple[list[list[CycNum]], list[int]]:
    """Reduced row echelon form (in place); returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pinv = rows[r][c].inv()
        rows[r] = [pinv * e for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def matrix_rank(rows: Iterable[Sequence[CycNum]]) -> int:
    return len(rref([list(r) for r in rows])[1])


def solve_linear(
    rows: Sequence[Sequence[CycNum]], rhs: Sequence[CycNum]
) -> tuple[Vector, list[Vector]] | None:
    """One exact solution of rows * x = rhs plus a kernel basis, or None.

    The system may be rectangular (rows of equal length, one rhs entry per
    row).  None signals inconsistency.
    """
    if not rows:
        return tuple(), []
    ncols = len(rows[0])
    conductor = rows[0][0].conductor
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    # a pivot in the rhs column means inconsistency
    if ncols in pivots:
        return None
    zero = CycNum.zero(conductor)
    one = CycNum.one(conductor)
    sol = [zero] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = reduced[r][ncols]
    free = [j for j in range(ncols) if j not in pivots]
    kern = []
    for j in free:
        v = [zero] * ncols
        v[j] = one
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][j]
        kern.append(tuple(v))
    return tuple(sol), kern


def span_dimension(vectors: Iterable[Sequence[CycNum]]) -> int:
    return matrix_rank(vectors)


def is_proportional(x: CMatrix, y: CMatrix) -> bool:
    """True when the flattened pair has rank <= 1 (y = k*x or degenerate)."""
    return matrix_rank([x.flatten(), y.flatten()]) <= 1


# -- spectral helpers for order-3 operators -----------------------------------


def eigenprojectors_order3(s: CMatrix) -> tuple[CMatrix, CMatrix, CMatrix]:
    """Lagrange projectors (P_1, P_w, P_w2) of an operator with S^3 = I.

    Requires the conductor to be divisible by 3 so that w lives in the
    field.  P_l = prod_{u != l} (S - u I)/(l - u); they are idempotent,
    mutually orthogonal and sum to the identity.
    """
    if s.conductor % 3 != 0:
        raise ConductorMismatch(
            "eigenprojectors need omega: promote S to a conductor divisible by 3"
        )
    ident = CMatrix.identity(s.dim, s.conductor)
    if s.matpow(3) != ident:
        raise NotOrderThree("S^3 != I")
    w = omega(s.conductor)
    w2 = w * w
    one = CycNum.one(s.conductor)
    s2 = s @ s
    # (S - wI)(S - w2 I) = S^2 + S + I and (1 - w)(1 - w2) = 3, etc.
    p1 = (s2 + s + ident).scalar_mul((3 * one).inv())
    pw = (s2 + w * s + w2 * ident).scalar_mul((3 * w2).inv())
    pw2 = (s2 + w2 * s + w * ident).scalar_mul((3 * w).inv())
    return p1, pw, pw2


def algebra_dimension(gens: Sequence[CMatrix]) -> int:
    """Dimension of the unital matrix algebra generated by gens.

    Span closure on flattened d^2 vectors: seed with I and the generators,
    multiply new basis elements by generators until the span stabilizes
    (capped at d^2 + 1 rounds).
    """
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].dim
    n = gens[0].conductor
    for g in gens[1:]:
        if g.dim != d:
            raise DimMismatch("generators must share a dimension")
        if g.conductor != n:
            raise ConductorMismatch("generators must share a conductor")
    echelon: list[tuple[int, Vector]] = []  # (pivot index, normalized vector)

    def insert(mat: CMatrix) -> bool:
        vec = list(mat.flatten())
        for piv, row in echelon:
            f = vec[piv]
            if not f.is_zero:
                vec = [a - f * b for a, b in zip(vec, row)]
        piv = next((i for i, e in enumerate(vec) if not e.is_zero), None)
        if piv is None:
            return False
        pinv = vec[piv].inv()
        echelon.append((piv, tuple(pinv * e for e in vec)))
        return True

    frontier: list[CMatrix] = []
    for mat in [CMatrix.identity(d, n), *gens]:
        if insert(mat):
            frontier.append(mat)
    rounds = 0
    while frontier and rounds <= d * d:
        rounds += 1
        new_frontier = []
        for mat in frontier:
            for g in gens:
                prod = g @ mat
                if insert(prod):
                    new_frontier.append(prod)
        frontier = new_frontier
    return len(echelon)
