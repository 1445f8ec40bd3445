"""Jordan normal bases in finite lattices and Jordan chains over GF(p)."""

from .errors import JordanLatError
from .gf import (
    GFMatrix,
    JordanChainBasis,
    Subspace,
    block_partition_oracle,
    compute_jordan_chains,
    image_space,
    kernel_space,
    preimage_vector,
    rref,
    verify_chain_basis,
)
from .jnb import (
    JordanNormalBase,
    check_prop_2_4,
    compute_jnb,
    extend_kernel_chain,
    lift_atom,
    nilpotency_from_jnb,
    verify_jnb,
)
from .joinhom import (
    ConditionReport,
    JoinHom,
    apply_power,
    build_join_hom,
    check_jnb1,
    check_jnb2,
    check_jnb3,
    nilpotency_index,
    preimages_below,
    restrict_to_image,
)
from .lattice import (
    FiniteLattice,
    IntervalEmbedding,
    build_lattice,
    has_atomic_cover_property,
    has_graded_chains,
    height,
    interval,
    is_atomistic,
    is_irredundant_join,
    join_many,
)
from .sublattice import (
    SubspaceLatticeModel,
    cross_validate,
    enumerate_subspace_lattice,
    induced_join_hom,
)

__version__ = "0.1.0"
