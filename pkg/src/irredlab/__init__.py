"""irredlab: exact classification of submodules of finite modules over Z,
Z/n, and finite products of residue rings, against a family of irreducibility
predicates, plus an exhaustive theorem-verification harness."""

from .classify import (
    CLASSIFY_PREDICATES,
    ClassificationReport,
    ModuleAnalysis,
    classify,
    classify_all,
    classify_via_elements,
)
from .descriptors import parse_module, parse_ring
from .errors import (
    ConsistencyError,
    DomainError,
    IrredlabError,
    ResourceError,
    UsageError,
)
from .harness import (
    InstanceConfig,
    TheoremCheckResult,
    THEOREMS,
    generate_instances,
    replay_counterexample,
    verify,
    verify_all,
)
from .lattice import (
    SubmoduleLattice,
    enumerate_submodules,
    irreducible_decomposition,
    maximal_submodules,
    module_predicate,
)
from .modules import (
    Element,
    FiniteModule,
    Submodule,
    annihilator,
    build_module,
    colon_into,
    decompose_submodule,
    ideal_apply,
    localize,
    product_module,
    quotient,
    span,
    sub_combine,
    submodule_predicate,
    submodule_radical,
)
from .rings import (
    IDEAL_PREDICATES,
    Ideal,
    Ring,
    classify_ideal,
    classify_ideal_exhaustive,
    ideal_combine,
    ideal_radical,
)
from .arith import factorize

__version__ = "0.1.0"
