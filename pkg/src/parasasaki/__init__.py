"""Numerical verification of almost paracontact paracomplex Riemannian geometry."""

__version__ = "0.1.0"

from .apcpc import (  # noqa: E402
    ApcpcStructure,
    build_cone,
    check_cone_parallel,
    check_F_properties,
    check_nijenhuis_routes,
    check_para_sasaki_like,
    validate_structure,
    verify_nabf,
)
from .constructions import (  # noqa: E402
    PhpcrModel,
    example1,
    example2,
    example3,
    example4,
    hyperbolic_extension,
    parallel_product,
)
from .curvature import (  # noqa: E402
    check_curf,
    check_horizontal_decomposition,
    check_xi_curvature,
    einstein_fit,
    eta_einstein_fit,
)
from .errors import *  # noqa: E402,F401,F403
from .geometry import ChartModel, LieFrameModel  # noqa: E402
from .reports import CheckReport  # noqa: E402
from .transformations import (  # noqa: E402
    ConformalData,
    apply_conformal,
    check_homothetic_laws,
    check_sssl,
    homothety,
    homothety_to_einstein,
    verify_lemma_ff,
)
