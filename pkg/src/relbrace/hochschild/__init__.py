from .algebra import (
    ActionError,
    AffineAction,
    Algebra,
    EndPlusElement,
    Report,
    action_from_json,
    bundled,
    bundled_actions,
    end_plus_product,
    load_algebra,
    validate_affine_action,
)
from .cochains import (
    Cochain,
    Space,
    bracket,
    brace,
    circle,
    convolution,
    convolution_oracle,
    def_differential,
    graft,
    mc_check,
    mc_element,
    pre_lie_product,
)
from .field import GF, GF101, QQ, Field
from .braces import action_defect, brace_eval, koszul_sign, verify_appendix_relations
from .classical import (
    cohomology_dims,
    cup,
    end_plus_bimodule,
    hochschild_cohomology,
    hochschild_d,
    hochschild_homology,
    regular_bimodule,
    whistle_check,
)
from .cone import cone_check, identity_samples, oracle_agreement
from .koszul import koszul_confluence_check
