'''Kernel selection: compiled extension if built, pure Python otherwise.

Set MONOFLAG_PURE=1 to force the pure implementations (used by the parity
tests and the benchmark).
'''

import os

if os.environ.get('MONOFLAG_PURE') == '1':
    from monoflag import _kernels_py as _impl
else:
    try:
        from monoflag import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from monoflag import _kernels_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
canon_colors = _impl.canon_colors
classify_pairs_l7 = _impl.classify_pairs_l7
