"""Select the hot kernels: compiled when available, else pure Python.

Set ``GRANVILLE_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("GRANVILLE_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import (BACKEND, add_nums, add_terms, divexact_cyclo_terms,
                              leading_monomial, mul_cyclo_terms, mulmod_nums)
else:
    try:
        from ._kernels import (BACKEND, add_nums, add_terms, divexact_cyclo_terms,
                               leading_monomial, mul_cyclo_terms, mulmod_nums)
    except ImportError:
        from ._kernels_py import (BACKEND, add_nums, add_terms, divexact_cyclo_terms,
                                  leading_monomial, mul_cyclo_terms, mulmod_nums)

__all__ = ["BACKEND", "add_nums", "add_terms", "divexact_cyclo_terms",
           "leading_monomial", "mul_cyclo_terms", "mulmod_nums"]
