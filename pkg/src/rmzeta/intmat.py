"""Exact integer matrix algebra.

Everything here runs on arbitrary-precision Python integers: products,
binary powers, determinants, characteristic polynomials, Smith normal
form with unimodular transforms, and the explicit 2x2 conjugation
witnesses used by the identity suites.  Matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalCheckError, InvalidInputError

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "multiply",
    "power",
    "smith_normal_form",
    "char_poly",
    "conjugate_to_companion",
    "verify_similarity",
]


class IntMatrix:
    """Square matrix of Python ints, immutable after construction."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise InvalidInputError("matrix must be square and non-empty")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.rows)))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise InvalidInputError("dimension mismatch")
        return IntMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise InvalidInputError("dimension mismatch")
        return IntMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def neg(self) -> "IntMatrix":
        return IntMatrix([[-a for a in row] for row in self.rows])

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        n = self.n
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        m = [list(r) for r in self.rows]
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
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.det() in (1, -1)

    def to_json_dict(self) -> dict:
        """Wire form: entries as decimal strings (they outgrow 64 bits)."""
        return {"n": self.n, "rows": [[str(x) for x in row] for row in self.rows]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "IntMatrix":
        rows = [[int(x) for x in row] for row in obj["rows"]]
        m = cls(rows)
        if m.n != int(obj["n"]):
            raise InvalidInputError("matrix dimension field disagrees with rows")
        return m


def multiply(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact product; dimensions must match."""
    if a.n != b.n:
        raise InvalidInputError("dimension mismatch")
    bt = b.transpose().rows
    return IntMatrix(
        [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a.rows]
    )


def power(m: IntMatrix, k: int) -> IntMatrix:
    """k-th power by binary exponentiation; power(m, 0) is the identity."""
    if k < 0:
        raise InvalidInputError("negative power")
    result = IntMatrix.identity(m.n)
    base = m
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = S with U, V unimodular and S = diag(d1 | d2 | ...)."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple:
        return tuple(self.s.rows[i][i] for i in range(self.s.n))


def _verify_smith(m: IntMatrix, dec: SmithDecomposition) -> None:
    if multiply(multiply(dec.u, m), dec.v) != dec.s:
        raise InternalCheckError("Smith decomposition does not reproduce input")
    if not (dec.u.is_unimodular() and dec.v.is_unimodular()):
        raise InternalCheckError("Smith transform matrices not unimodular")
    diag = dec.diagonal
    for i in range(len(diag)):
        if diag[i] < 0:
            raise InternalCheckError("negative Smith diagonal entry")
        for j in range(len(diag)):
            if i != j and dec.s.rows[i][j] != 0:
                raise InternalCheckError("Smith form not diagonal")
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            raise InternalCheckError("zero before nonzero in Smith diagonal")
        if a != 0 and b % a != 0:
            raise InternalCheckError("Smith divisibility chain broken")


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Diagonalize over the integers with unimodular row/column transforms.

    Pivoting picks the smallest nonzero absolute value in the remaining
    block, which keeps entry growth tame at this scale.  The returned
    decomposition is re-verified before it leaves this function.
    """
    n = m.n
    s = [list(row) for row in m.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i += q * row_j
        s[i] = [a + q * b for a, b in zip(s[i], s[j])]
        u[i] = [a + q * b for a, b in zip(u[i], u[j])]

    def add_col(i, j, q):
        # col_i += q * col_j
        for row in s:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    for k in range(n):
        while True:
            pivot = None
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    a = abs(s[i][j])
                    if a != 0 and (best is None or a < best):
                        best = a
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(k, pivot[0])
            swap_cols(k, pivot[1])
            dirty = False
            for i in range(k + 1, n):
                if s[i][k] != 0:
                    add_row(i, k, -(s[i][k] // s[k][k]))
                    dirty = dirty or s[i][k] != 0
            for j in range(k + 1, n):
                if s[k][j] != 0:
                    add_col(j, k, -(s[k][j] // s[k][k]))
                    dirty = dirty or s[k][j] != 0
            if dirty:
                continue
            # Pivot must divide every remaining entry for the chain to hold.
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if s[i][j] % s[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(k, offender, 1)
        if k < n and s[k][k] < 0:
            s[k] = [-a for a in s[k]]
            u[k] = [-a for a in u[k]]

    dec = SmithDecomposition(IntMatrix(u), IntMatrix(s), IntMatrix(v))
    _verify_smith(m, dec)
    return dec


def char_poly(m: IntMatrix) -> tuple:
    """Monic characteristic polynomial, highest degree first.

    Faddeev-LeVerrier recursion; every division is exact over the
    integers and asserted as such.
    """
    n = m.n
    coeffs = [1]
    b = m
    c = None
    for k in range(1, n + 1):
        if k > 1:
            b = multiply(m, b.add(_scaled_identity(n, c)))
        t = b.trace()
        if t % k != 0:
            raise InternalCheckError("Faddeev-LeVerrier trace not divisible")
        c = -(t // k)
        coeffs.append(c)
    return tuple(coeffs)


def _scaled_identity(n: int, c: int) -> IntMatrix:
    return IntMatrix([[c if i == j else 0 for j in range(n)] for i in range(n)])


def conjugate_to_companion(a: int, c: int, d: int):
    """Conjugate M = [[a,1],[c,d]] into [[a+d,1],[c-ad,0]].

    Returns the witness W = [[1,0],[d,1]] together with the conjugated
    matrix; the identity W^-1 M W = M' is re-verified before returning.
    Rejects det(M) = ad - c = 0.
    """
    if a * d - c == 0:
        raise InvalidInputError("determinant ad - c is zero")
    m = IntMatrix([[a, 1], [c, d]])
    w = IntMatrix([[1, 0], [d, 1]])
    w_inv = IntMatrix([[1, 0], [-d, 1]])
    m_prime = IntMatrix([[a + d, 1], [c - a * d, 0]])
    if multiply(multiply(w_inv, m), w) != m_prime:
        raise InternalCheckError("conjugation identity failed")
    return w, m_prime


def verify_similarity(a: IntMatrix, b: IntMatrix, w: IntMatrix) -> bool:
    """True iff w^-1 a w = b exactly; w must be unimodular.

    Checked as a*w == w*b, which avoids forming the inverse.
    """
    if not w.is_unimodular():
        raise InvalidInputError("witness matrix is not unimodular")
    if a.n != b.n or a.n != w.n:
        raise InvalidInputError("dimension mismatch")
    return multiply(a, w) == multiply(w, b)
