"""Weinstein harmonic analysis on discretized grids.

Kernel and transform, generalized translation and convolution, two-wavelet
continuous wavelet analysis, and time-frequency localization operators,
with a verification battery for every identity and norm bound.
"""

from .grids import (BaseGrid, Field, ScaleField, ScaleGrid, build_base_grid,
                    build_scale_grid, field_from_function, inner_product, lp_norm,
                    reflect, scale_inner_product, scale_lp_norm)
from .special import (measure_constant, normalized_bessel, radial_constant,
                      translation_constant, weinstein_kernel)
from .transform import (TransformPlan, build_plan, check_hausdorff_young,
                        check_parseval, check_plancherel, forward, inverse)
from .translation import (ThetaRule, TranslationKernel, convolve,
                          convolve_spectral, translate)
from .wavelets import (WaveletPair, Window, admissibility_constant, build_pair,
                       cwt, cwt_convolution_form, check_two_wavelet_parseval,
                       default_windows, dilate, family_member, invert_cwt,
                       two_wavelet_constant, window_from_profile)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
