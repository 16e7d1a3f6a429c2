"""Binary symplectic algebra: Pauli operators as GF(2) vectors.

Phases are deliberately dropped throughout: every property this package
verifies (commutation, stabilizer membership, syndromes) is insensitive to
Pauli phases, so an operator is just its (x|z) bit pattern.

Qubit index spaces are nominal: a PauliOp carries a Space tag and operations
refuse to mix operators from different spaces, so color-code and
surface-code operators can never be combined silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import SingularMatrixError, SpaceMismatchError


@dataclass(frozen=True)
class Space:
    """A named qubit index space of size n."""

    name: str
    n: int

    def __str__(self) -> str:
        return f"{self.name}[{self.n}]"


def _check_same_space(a: "PauliOp", b: "PauliOp") -> None:
    if a.space != b.space:
        raise SpaceMismatchError(f"operands live on {a.space} and {b.space}")


@dataclass(frozen=True, eq=False)
class PauliOp:
    """A phase-free Pauli operator: x and z bit vectors over a Space."""

    space: Space
    x: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.ascontiguousarray(self.x, dtype=np.uint8) & 1)
        object.__setattr__(self, "z", np.ascontiguousarray(self.z, dtype=np.uint8) & 1)
        if self.x.shape != (self.space.n,) or self.z.shape != (self.space.n,):
            raise ValueError(
                f"bit vectors must have length {self.space.n}, "
                f"got {self.x.shape} and {self.z.shape}"
            )

    @classmethod
    def identity(cls, space: Space) -> "PauliOp":
        zero = np.zeros(space.n, dtype=np.uint8)
        return cls(space, zero, zero.copy())

    @classmethod
    def single(cls, space: Space, qubit: int, kind: str) -> "PauliOp":
        """Weight-1 operator of the given kind ('X', 'Y' or 'Z') on one qubit."""
        x = np.zeros(space.n, dtype=np.uint8)
        z = np.zeros(space.n, dtype=np.uint8)
        if kind in ("X", "Y"):
            x[qubit] = 1
        if kind in ("Z", "Y"):
            z[qubit] = 1
        if kind not in ("X", "Y", "Z"):
            raise ValueError(f"kind must be X, Y or Z, got {kind!r}")
        return cls(space, x, z)

    @classmethod
    def from_support(cls, space: Space, xs=(), zs=()) -> "PauliOp":
        """Operator with X on qubits xs and Z on qubits zs (Y where both)."""
        x = np.zeros(space.n, dtype=np.uint8)
        z = np.zeros(space.n, dtype=np.uint8)
        for q in xs:
            x[q] ^= 1
        for q in zs:
            z[q] ^= 1
        return cls(space, x, z)

    @classmethod
    def from_string(cls, space: Space, text: str) -> "PauliOp":
        """Parse an IXYZ string, e.g. 'IXZY' (Y means x=z=1)."""
        text = text.strip().upper()
        if len(text) != space.n:
            raise ValueError(f"expected {space.n} symbols, got {len(text)}")
        x = np.zeros(space.n, dtype=np.uint8)
        z = np.zeros(space.n, dtype=np.uint8)
        for q, ch in enumerate(text):
            if ch == "I":
                continue
            if ch in ("X", "Y"):
                x[q] = 1
            if ch in ("Z", "Y"):
                z[q] = 1
            if ch not in ("X", "Y", "Z"):
                raise ValueError(f"invalid Pauli symbol {ch!r} at position {q}")
        return cls(space, x, z)

    def to_string(self) -> str:
        table = np.array(["I", "X", "Z", "Y"])
        return "".join(table[self.x + 2 * self.z])

    @property
    def is_identity(self) -> bool:
        return not (self.x.any() or self.z.any())

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        _check_same_space(self, other)
        return PauliOp(self.space, self.x ^ other.x, self.z ^ other.z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOp):
            return NotImplemented
        return (
            self.space == other.space
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def vector(self) -> np.ndarray:
        """The (x|z) coordinate vector of length 2n, dtype uint8."""
        return np.concatenate([self.x, self.z])

    @classmethod
    def from_vector(cls, space: Space, vec: np.ndarray) -> "PauliOp":
        vec = np.asarray(vec, dtype=np.uint8)
        if vec.shape != (2 * space.n,):
            raise ValueError(f"expected length {2 * space.n}, got {vec.shape}")
        return cls(space, vec[: space.n], vec[space.n :])

    def __repr__(self) -> str:
        return f"PauliOp({self.space.name}, {self.to_string()})"


def symplectic_product(a: PauliOp, b: PauliOp) -> int:
    """0 iff a and b commute; a.x . b.z + a.z . b.x over GF(2)."""
    _check_same_space(a, b)
    total = int((a.x & b.z).sum()) + int((a.z & b.x).sum())
    return total & 1


class Gf2Matrix:
    """Dense GF(2) matrix with bit-packed rows (uint64 words)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = np.zeros((rows, K.words_for(cols)), dtype=np.uint64)
        self.data = data

    @classmethod
    def from_dense(cls, dense) -> "Gf2Matrix":
        dense = np.asarray(dense, dtype=np.uint8) & 1
        rows, cols = dense.shape
        return cls(rows, cols, K.pack_rows(dense))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    def to_dense(self) -> np.ndarray:
        return K.unpack_rows(self.data, self.cols)

    def copy(self) -> "Gf2Matrix":
        return Gf2Matrix(self.rows, self.cols, self.data.copy())

    def get(self, i: int, j: int) -> int:
        return K.get_bit(self.data[i], j)

    def set(self, i: int, j: int, value: int = 1) -> None:
        K.set_bit(self.data[i], j, value)

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix.from_dense(self.to_dense().T)

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        return Gf2Matrix(self.rows, other.cols, K.matmul(self.data, self.cols, other.data))

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        return Gf2Matrix(self.rows, self.cols, self.data ^ other.data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.data, other.data)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def mat_vec(self, vec_bits: np.ndarray) -> np.ndarray:
        """Matrix-vector product over GF(2); vec is a 0/1 array of length cols."""
        packed = K.pack_vec(vec_bits)
        return K.mat_vec_parity(self.data, packed)

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}x{self.cols})"

    def dump(self) -> str:
        """Debug form: one line of 0/1 per row."""
        return "\n".join("".join(str(b) for b in row) for row in self.to_dense())


def rank(m: Gf2Matrix) -> int:
    work = m.data.copy()
    return len(K.row_reduce(work, m.cols))


def invert(m: Gf2Matrix) -> Gf2Matrix:
    """Inverse over GF(2); raises SingularMatrixError if not full rank square."""
    if m.rows != m.cols:
        raise SingularMatrixError(f"cannot invert non-square {m.shape} matrix")
    n = m.rows
    aug = np.hstack([m.to_dense(), np.eye(n, dtype=np.uint8)])
    packed = K.pack_rows(aug)
    pivots = K.row_reduce(packed, n)
    if len(pivots) != n:
        raise SingularMatrixError(f"matrix has rank {len(pivots)} < {n}")
    dense = K.unpack_rows(packed, 2 * n)
    return Gf2Matrix.from_dense(dense[:, n:])


def solve(m: Gf2Matrix, rhs: np.ndarray) -> np.ndarray | None:
    """Any solution x of m X = rhs over GF(2), or None when inconsistent.

    rhs may be a length-rows vector or a (rows, k) matrix of stacked
    right-hand sides; the result matches its shape.  When the system is
    underdetermined, free variables are set to zero.
    """
    rhs = np.asarray(rhs, dtype=np.uint8) & 1
    single = rhs.ndim == 1
    rhs2 = rhs.reshape(m.rows, -1) if not single else rhs.reshape(m.rows, 1)
    aug = np.hstack([m.to_dense(), rhs2])
    packed = K.pack_rows(aug)
    pivots = K.row_reduce(packed, m.cols)
    dense = K.unpack_rows(packed, m.cols + rhs2.shape[1])
    lhs, rhs_red = dense[:, : m.cols], dense[:, m.cols :]
    # Inconsistent iff some zero lhs-row has a nonzero reduced rhs.
    zero_rows = ~lhs.any(axis=1)
    if (rhs_red[zero_rows] != 0).any():
        return None
    x = np.zeros((m.cols, rhs2.shape[1]), dtype=np.uint8)
    for r, c in enumerate(pivots):
        x[c] = rhs_red[r]
    return x[:, 0] if single else x


@dataclass(eq=False)
class SymplecticMap:
    """Invertible GF(2)-linear map on (x|z) Pauli coordinates.

    matrix is 2n x 2n acting on column vectors (x|z); the codomain's first
    n1 qubits are the edges of the first surface-graph copy, the remainder
    the second copy.
    """

    matrix: Gf2Matrix
    domain: Space
    codomain: Space
    n1: int
    _inverse: Gf2Matrix | None = field(default=None, repr=False)

    def __post_init__(self):
        two_n = 2 * self.domain.n
        if self.matrix.shape != (two_n, two_n):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match domain {self.domain}"
            )
        if self.codomain.n != self.domain.n:
            raise ValueError("domain and codomain must have equal qubit counts")

    @property
    def inverse_matrix(self) -> Gf2Matrix:
        if self._inverse is None:
            self._inverse = invert(self.matrix)
        return self._inverse

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymplecticMap):
            return NotImplemented
        return (
            self.matrix == other.matrix
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.n1 == other.n1
        )


def symplectic_form(n: int) -> Gf2Matrix:
    """The standard form Lambda on (x|z) coordinates: [[0, I], [I, 0]]."""
    zero = np.zeros((n, n), dtype=np.uint8)
    eye = np.eye(n, dtype=np.uint8)
    return Gf2Matrix.from_dense(np.block([[zero, eye], [eye, zero]]))


def is_symplectic(m: SymplecticMap) -> bool:
    """True iff M Lambda M^T = Lambda, i.e. all commutation relations survive."""
    lam = symplectic_form(m.domain.n)
    product = m.matrix @ lam @ m.matrix.transpose()
    return product == lam


def apply(m: SymplecticMap, p: PauliOp) -> PauliOp:
    """Image of p under the map; p must live on the domain space."""
    if p.space != m.domain:
        raise SpaceMismatchError(f"operator on {p.space}, map domain is {m.domain}")
    out = m.matrix.mat_vec(p.vector())
    return PauliOp.from_vector(m.codomain, out)


def preimage(m: SymplecticMap, p: PauliOp) -> PauliOp:
    """Unique preimage of p; p must live on the codomain space."""
    if p.space != m.codomain:
        raise SpaceMismatchError(f"operator on {p.space}, map codomain is {m.codomain}")
    out = m.inverse_matrix.mat_vec(p.vector())
    return PauliOp.from_vector(m.domain, out)
