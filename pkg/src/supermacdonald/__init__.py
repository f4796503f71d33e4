"""Macdonald and super-Macdonald polynomials, the deformed
Macdonald-Ruijsenaars operators, and their torus-quadrature Hermitian form."""

import os

# must happen before numpy loads its BLAS
if os.environ.get("SUPERMAC_THREADS"):
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, os.environ["SUPERMAC_THREADS"])

from .partitions import Partition, parse_partition  # noqa: E402
from .scalars import ParamSet  # noqa: E402
from .symfunc import SymFunc, macdonald_P, macdonald_Q, skew_P  # noqa: E402
from .polynomial import BiSymPoly  # noqa: E402
from .supermac import super_P, super_P_via_expansion  # noqa: E402

__version__ = "0.1.0"
