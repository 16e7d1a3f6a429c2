"""GF(2) kernel backend selection.

The compiled Cython extension is preferred when present; the pure-numpy
fallback is used otherwise.  Override with COLORSURF_KERNELS=pure or
COLORSURF_KERNELS=compiled (the latter raises if the extension is missing).
Both backends produce identical outputs; see benchmarks/bench_kernels.py
for the speed comparison.
"""

from __future__ import annotations

import os

from . import _pure
from ._pure import (
    get_bit,
    pack_rows,
    pack_vec,
    set_bit,
    unpack_rows,
    unpack_vec,
    words_for,
)

_requested = os.environ.get("COLORSURF_KERNELS", "").strip().lower()

if _requested not in ("", "pure", "compiled"):
    raise ValueError(
        f"COLORSURF_KERNELS must be 'pure' or 'compiled', got {_requested!r}"
    )

if _requested == "pure":
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "COLORSURF_KERNELS=compiled but the extension is not built; "
                "run 'pip install -e .' or 'python setup.py build_ext --inplace'"
            )
        _impl = _pure
        BACKEND = "pure"

row_reduce = _impl.row_reduce
mat_vec_parity = _impl.mat_vec_parity
matmul = _impl.matmul
xor_select = _impl.xor_select
popcounts = _impl.popcounts
coset_min_weight = _impl.coset_min_weight
coset_min_weight_many = _impl.coset_min_weight_many

__all__ = [
    "BACKEND",
    "words_for",
    "pack_rows",
    "unpack_rows",
    "pack_vec",
    "unpack_vec",
    "get_bit",
    "set_bit",
    "row_reduce",
    "mat_vec_parity",
    "matmul",
    "xor_select",
    "popcounts",
    "coset_min_weight",
    "coset_min_weight_many",
]
