__version__ = "0.1.0"

from .poset import (
    FiniteLattice,
    Interval,
    PosetRelation,
    boolean_lattice,
    build_lattice,
    chain,
    divisor_lattice,
    interval_order,
    intervals,
    is_lattice_poset,
    join,
    meet,
    product_lattice,
)
from .transfer import (
    MorphismClass,
    TransferSystem,
    enumerate_transfer_systems,
    factorize,
    is_transfer_system,
    left_class,
    pi_map,
    theta_map,
    transfer_closure,
    weak_equivalences,
)
from .orders import (
    PairKind,
    StructurePair,
    cc_join,
    classify,
    closed_form_count,
    enumerate_structures,
    is_cc_pair,
    is_compatible_pair,
    is_model_pair,
    order_poset,
)
from .kreweras import NoncrossingPartition, kreweras_leq, partition_of, transfer_of
from .trees import TricoloredTree, pair_to_tree, tree_to_pair
from .triangulation import StackedTriangulation
from .workspace import LatticeWorkspace
