"""Kernel selection: compiled extension if built, pure Python otherwise.

Set ``INVCO_PURE=1`` to force the fallback (used by the benchmark and the
kernel-agreement tests).
"""

import os

if os.environ.get("INVCO_PURE"):
    from invco import _kernels_py as kernels
else:
    try:
        from invco import _speedups as kernels  # type: ignore[no-redef]
    except ImportError:
        from invco import _kernels_py as kernels  # type: ignore[no-redef]

KERNEL_IMPL = kernels.IMPL

assoc_violations = kernels.assoc_violations
find_inverses = kernels.find_inverses
leq_bitsets = kernels.leq_bitsets
close_bits = kernels.close_bits
reduce_word = kernels.reduce_word
munn_key = kernels.munn_key


def iter_bits(bits):
    """Yield the set bit positions of an int bitset, ascending."""
    x = 0
    while bits:
        if bits & 1:
            yield x
        bits >>= 1
        x += 1


def bits_of(ids):
    b = 0
    for i in ids:
        b |= 1 << i
    return b
