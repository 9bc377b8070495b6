"""Kernel backend selection.

The compiled extension shadows _kernels_py with the same functions. Import
order: TIGROUPS_PURE=1 forces the pure-Python backend, otherwise the compiled
one is used when the build produced it. Both backends share the raw key
representation, so values may cross between them freely (the benchmark does
exactly that).
"""

import os

if os.environ.get("TIGROUPS_PURE") == "1":
    from tigroups import _kernels_py as _impl
else:
    try:
        from tigroups import _ckernels as _impl
    except ImportError:
        from tigroups import _kernels_py as _impl

BACKEND = _impl.BACKEND

key_from_images = _impl.key_from_images
identity_key = _impl.identity_key
compose = _impl.compose
inverse = _impl.inverse
conjugate = _impl.conjugate
power = _impl.power
perm_order = _impl.perm_order
orbit_transversal = _impl.orbit_transversal
orbit_points = _impl.orbit_points
sift = _impl.sift
closure_keys = _impl.closure_keys
conjugate_set = _impl.conjugate_set
conjugacy_partition = _impl.conjugacy_partition
elements_from_chain = _impl.elements_from_chain
