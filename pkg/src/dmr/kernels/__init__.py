"""Hashing kernels with a compiled core and a NumPy fallback.

The compiled extension (``dmr.kernels._hashing``, built from Cython) is
preferred when present; otherwise the pure-NumPy implementation in
``dmr.kernels.pure`` is used. Both produce bit-identical output.

Set ``DMR_KERNEL_BACKEND=pure`` or ``=cython`` to force a backend
(``cython`` raises if the extension was not built).
"""

import os

from dmr.kernels import pure as _pure

_requested = os.environ.get("DMR_KERNEL_BACKEND", "auto").lower()

if _requested == "pure":
    _impl = _pure
elif _requested in ("auto", "cython"):
    try:
        from dmr.kernels import _hashing as _impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "DMR_KERNEL_BACKEND=cython but the compiled extension is not "
                "available; reinstall the package or use the pure backend"
            )
        _impl = _pure
else:
    raise ValueError(f"unknown DMR_KERNEL_BACKEND {_requested!r}")

backend_name = _impl.BACKEND_NAME
token_ids = _impl.token_ids
feature_hash = _impl.feature_hash
shingle_hashes = _impl.shingle_hashes
minhash_signature = _impl.minhash_signature
hash_token_list = _impl.hash_token_list

__all__ = [
    "backend_name",
    "token_ids",
    "feature_hash",
    "shingle_hashes",
    "minhash_signature",
    "hash_token_list",
]
