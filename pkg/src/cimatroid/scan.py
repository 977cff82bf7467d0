"""Exhaustive scan of all CI-structures on [n] for the matroid axioms.

Structures are encoded as bit masks over the dense statement order, so
the scan space for n = 4 is all 2**24 masks.  The (SG) and (MCI)
schemata are precompiled into index patterns (see
``axioms.mask_rule_tables``) and applied with early exit per mask.

Two interchangeable kernels produce the identical survivor list:

* a numba ``@njit`` kernel that parallelizes over the mask range, used
  by default when numba imports;
* a pure-numpy fallback that filters mask chunks rule by rule.

Set ``CIMATROID_BACKEND=numpy`` (or ``numba``/``auto``) to override, or
pass ``backend=`` explicitly; ``benchmarks/bench_scan.py`` times both.
"""

from __future__ import annotations

import os

import numpy as np

from .axioms import mask_rule_tables
from .ci import statement_count
from .errors import CapacityError

SCAN_MAX_GROUND = 4

_ENV_VAR = "CIMATROID_BACKEND"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    numba = None
    HAVE_NUMBA = False


if HAVE_NUMBA:

    @numba.njit(parallel=True, cache=True)
    def _kernel_numba(total, mci, sg, alive):  # pragma: no cover - jitted
        for mask in numba.prange(total):
            ok = True
            for t in range(mci.shape[0]):
                if (mask >> mci[t, 0]) & 1 == 0 and (mask >> mci[t, 1]) & 1 == 0:
                    ok = False
                    break
            if ok:
                for t in range(sg.shape[0]):
                    if ((mask >> sg[t, 0]) & 1 == 1 and (mask >> sg[t, 1]) & 1 == 1
                            and (mask >> sg[t, 2]) & 1 == 0):
                        ok = False
                        break
            alive[mask] = 1 if ok else 0


def _scan_numba(total: int, mci: np.ndarray, sg: np.ndarray) -> np.ndarray:
    alive = np.zeros(total, dtype=np.uint8)
    _kernel_numba(total, mci, sg, alive)
    return np.flatnonzero(alive).astype(np.uint32)


def _scan_numpy(total: int, mci: np.ndarray, sg: np.ndarray,
                chunk: int = 1 << 20) -> np.ndarray:
    survivors = []
    for lo in range(0, total, chunk):
        masks = np.arange(lo, min(lo + chunk, total), dtype=np.uint32)
        for a, b in mci:
            keep = (((masks >> a) | (masks >> b)) & 1).astype(bool)
            masks = masks[keep]
            if masks.size == 0:
                break
        for a, b, c in sg:
            if masks.size == 0:
                break
            violated = ((masks >> a) & (masks >> b) & ~(masks >> c)) & 1
            masks = masks[violated == 0]
        if masks.size:
            survivors.append(masks)
    if not survivors:
        return np.empty(0, dtype=np.uint32)
    return np.concatenate(survivors)


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def resolve_backend(backend: str | None = None) -> str:
    """Pick the kernel: explicit argument, then the environment, then auto."""
    choice = backend or os.environ.get(_ENV_VAR, "auto")
    if choice == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    if choice == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    if choice not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {choice!r}; use numba, numpy or auto")
    return choice


def matroid_ci_masks(n: int, backend: str | None = None) -> np.ndarray:
    """Sorted masks of all structures on [n] passing (SG) and (MCI).

    The mask bit t corresponds to statement t of the dense order; decode
    with ``CIStructure.from_mask``.
    """
    if not 2 <= n <= SCAN_MAX_GROUND:
        raise CapacityError(f"exhaustive scan supports 2 <= n <= {SCAN_MAX_GROUND}")
    total = 1 << statement_count(n)
    mci, sg = mask_rule_tables(n)
    if resolve_backend(backend) == "numba":
        return _scan_numba(total, mci, sg)
    return _scan_numpy(total, mci, sg)
