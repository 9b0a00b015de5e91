"""Involutions of the split octonion automorphism group over exact fields."""

from .algebra import Octonion, double, find_zero_divisor, is_composition_algebra, octonion_algebra
from .automorphisms import (
    LinearMap,
    fixed_subalgebra,
    is_automorphism,
    quaternion_presentation,
    s_element,
    s_p_element,
    s_times_torus,
    torus_element,
)
from .classify import classify_field, classify_involution, same_class
from .fields import C, Fp, Q, Qp, R, hilbert_symbol, parse_field, square_class
from .forms import DiagonalForm, is_isotropic, quaternion_is_split

__version__ = "0.1.0"
