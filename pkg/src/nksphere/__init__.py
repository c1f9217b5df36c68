"""Octonion algebra, calibration geometry and slant surfaces on the six-sphere."""

from .calibration import (
    CanonicalReduction,
    Plane3,
    associator_of_plane,
    canonical_plane,
    cayley_dickson_frame,
    g2_equivalent,
    gram_frame,
    phi_of_plane,
    plane_from_spanning,
    random_plane,
    signed_phi,
    subspace_distance,
)
from .g2 import (
    G2Automorphism,
    TorusFlow,
    automorphism_from_basic_triple,
    cartan_generators,
    g2_standard_basis,
    is_automorphism,
    is_derivation,
    random_automorphism,
    so7_generator,
    torus_flow,
)
from .octonion import (
    assoc_form,
    associator,
    basis,
    conjugate,
    cross,
    embed_imaginary,
    imaginary_basis,
    imaginary_part,
    inner,
    j_structure,
    multiply,
    norm,
    structure_constants,
)
from .orbits import (
    OrbitGeometry,
    ScanResult,
    linear_fullness,
    mean_curvature_closed_form,
    minimal_family_point,
    orbit_action,
    orbit_geometry,
    orbit_slant_cos,
    param_to_point,
    regularity,
    slant_cos_closed_form,
    slant_cos_param,
    slant_scan,
    tangent_frame,
)
from .spheres import (
    SlantReport,
    SphereSection,
    TangentFrame,
    analyze_great_sphere,
    analyze_small_sphere,
    slant_center,
    wirtinger_cos,
)

__version__ = "0.1.0"
