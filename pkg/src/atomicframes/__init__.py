"""Frames, atomic systems for operators, and sampling in Bergman and Fock spaces."""

__version__ = "0.1.0"

from .atomic import (DualPair, LFrameCertificate, Theorem5Report, adjoint_expansion_check,  # noqa: E402
                     atomic_coefficients, build_atomic_system, lframe_bounds, minimal_bessel_dual,
                     verify_theorem5)
from .frames import (BoundCertificate, FrameFamily, analysis, bessel_bound, canonical_dual,  # noqa: E402
                     frame_bounds, frame_operator, reconstruct, synthesis)
from .numeric import Tolerances, hermitian_eig, pinv, svd  # noqa: E402
