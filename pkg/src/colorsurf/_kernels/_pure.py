"""Pure-numpy GF(2) kernels on bit-packed uint64 rows.

Reference implementation of the kernel API; the compiled extension in
``_core.pyx`` mirrors these semantics exactly (same pivot choices, same
outputs).  Rows are packed little-endian: bit j of a row lives in word
``j // 64`` at bit position ``j % 64``.
"""

from __future__ import annotations

import numpy as np

_ONE = np.uint64(1)


def words_for(nbits: int) -> int:
    """Number of 64-bit words needed to hold nbits."""
    return max(1, (nbits + 63) // 64)


def pack_rows(dense) -> np.ndarray:
    """Pack a 2D 0/1 uint8 array into uint64 rows (little-endian bits)."""
    dense = np.ascontiguousarray(dense, dtype=np.uint8)
    if dense.ndim != 2:
        raise ValueError("pack_rows expects a 2D array")
    rows, ncols = dense.shape
    nwords = words_for(ncols)
    packed_bytes = np.packbits(dense, axis=1, bitorder="little")
    out = np.zeros((rows, nwords * 8), dtype=np.uint8)
    out[:, : packed_bytes.shape[1]] = packed_bytes
    return out.view(np.uint64).reshape(rows, nwords)


def unpack_rows(packed: np.ndarray, ncols: int) -> np.ndarray:
    """Inverse of pack_rows; returns a (rows, ncols) uint8 array."""
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    rows = packed.shape[0]
    as_bytes = packed.view(np.uint8).reshape(rows, -1)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :ncols].copy()


def pack_vec(dense) -> np.ndarray:
    return pack_rows(np.asarray(dense, dtype=np.uint8).reshape(1, -1))[0]

def unpack_vec(packed: np.ndarray, ncols: int) -> np.ndarray:
    return unpack_rows(packed.reshape(1, -1), ncols)[0]


def get_bit(row: np.ndarray, j: int) -> int:
    return int((row[j >> 6] >> np.uint64(j & 63)) & _ONE)


def set_bit(row: np.ndarray, j: int, value: int = 1) -> None:
    if value:
        row[j >> 6] |= _ONE << np.uint64(j & 63)
    else:
        row[j >> 6] &= ~(_ONE << np.uint64(j & 63))


def row_reduce(a: np.ndarray, ncols: int) -> list[int]:
    """In-place reduced row echelon form over GF(2).

    Pivots are searched in the first ncols columns only; row XORs apply to
    the full row width, so extra columns act as an augmented block.
    Returns the list of pivot columns (rank = its length).
    """
    rows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= rows:
            break
        w = c >> 6
        b = np.uint64(c & 63)
        col = (a[r:, w] >> b) & _ONE
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = ((a[:, w] >> b) & _ONE).astype(bool)
        mask[r] = False
        if mask.any():
            a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return pivots


def mat_vec_parity(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """y[i] = parity(popcount(a[i] & v)), returned as uint8."""
    acc = np.bitwise_and(a, v[None, :])
    return (np.bitwise_count(acc).sum(axis=1) & 1).astype(np.uint8)


def matmul(a: np.ndarray, n_inner: int, b: np.ndarray) -> np.ndarray:
    """GF(2) matrix product: out[i] = XOR of b[j] over set bits j of a[i]."""
    m = a.shape[0]
    out = np.zeros((m, b.shape[1]), dtype=np.uint64)
    for j in range(n_inner):
        w = j >> 6
        bit = np.uint64(j & 63)
        mask = ((a[:, w] >> bit) & _ONE).astype(bool)
        if mask.any():
            out[mask] ^= b[j]
    return out


def xor_select(rows: np.ndarray, idx) -> np.ndarray:
    """XOR of the selected rows; zeros when idx is empty."""
    idx = np.asarray(idx, dtype=np.intp)
    if idx.size == 0:
        return np.zeros(rows.shape[1], dtype=np.uint64)
    return np.bitwise_xor.reduce(rows[idx], axis=0)


def popcounts(a: np.ndarray) -> np.ndarray:
    """Per-row popcount."""
    return np.bitwise_count(a).sum(axis=1).astype(np.int64)


def coset_min_weight(table: np.ndarray, v: int, n: int) -> tuple[int, int]:
    """(index, weight) minimizing the Pauli weight of table[i] ^ v.

    Entries are single-word (x|z) vectors over n qubits (2n <= 64); the
    Pauli weight is popcount(x | z).  Ties resolve to the lowest index.
    """
    mask = np.uint64((1 << n) - 1)
    coset = table ^ np.uint64(v)
    weights = np.bitwise_count((coset | (coset >> np.uint64(n))) & mask)
    idx = int(weights.argmin())
    return idx, int(weights[idx])


def coset_min_weight_many(
    table: np.ndarray, vs: np.ndarray, n: int, stop_at: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """coset_min_weight for a batch of single-word vectors.

    stop_at is an early-exit hint for the compiled backend; results are
    identical either way (argmin always returns the first minimum).
    """
    mask = np.uint64((1 << n) - 1)
    coset = table[None, :] ^ np.ascontiguousarray(vs, dtype=np.uint64)[:, None]
    weights = np.bitwise_count((coset | (coset >> np.uint64(n))) & mask)
    idxs = weights.argmin(axis=1)
    return idxs.astype(np.int64), weights[np.arange(len(vs)), idxs].astype(np.int64)
