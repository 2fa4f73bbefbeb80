"""Exact counts of superspecial abelian varieties over prime fields,
with class-group and 2-adic lattice classification tooling."""

from .arith import (
    AlphaRoots,
    ResidueMatrix,
    hensel_alpha_roots,
    is_prime,
    kronecker,
    rank_mod2,
    snf_mod2k,
)
from .count import (
    CountReport,
    count_superspecial,
    count_via_genus_sum,
    deuring_hprime,
    eichler_h,
    field_discriminant,
    sprime_small,
    type_number_check,
    unit_index,
)
from .errors import InvariantViolation, PrecisionError
from .hecke import HeckeReport, hecke_orbit_report
from .kernels import get_backend, set_backend
from .modclass import (
    DecompInvariants,
    TwoAdicModule,
    canonical_module,
    decompose,
    is_tate_like,
    load_module,
    module_to_dict,
    random_conjugate,
    split,
    validate,
)
from .qform import (
    Disc,
    FormClassGroup,
    QuadForm,
    class_group,
    class_number,
    class_number_dirichlet,
    compose,
    pic_localized,
    principal_form,
    qf_pow,
    reduce,
    reduced_forms,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaRoots",
    "CountReport",
    "DecompInvariants",
    "Disc",
    "FormClassGroup",
    "HeckeReport",
    "InvariantViolation",
    "PrecisionError",
    "QuadForm",
    "ResidueMatrix",
    "TwoAdicModule",
    "canonical_module",
    "class_group",
    "class_number",
    "class_number_dirichlet",
    "compose",
    "count_superspecial",
    "count_via_genus_sum",
    "decompose",
    "deuring_hprime",
    "eichler_h",
    "field_discriminant",
    "get_backend",
    "hecke_orbit_report",
    "hensel_alpha_roots",
    "is_prime",
    "is_tate_like",
    "kronecker",
    "load_module",
    "module_to_dict",
    "pic_localized",
    "principal_form",
    "qf_pow",
    "random_conjugate",
    "rank_mod2",
    "reduce",
    "reduced_forms",
    "set_backend",
    "snf_mod2k",
    "split",
    "sprime_small",
    "type_number_check",
    "unit_index",
    "validate",
    "__version__",
]
