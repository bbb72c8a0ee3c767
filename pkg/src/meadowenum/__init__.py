"""Enumerate finite pre-meadows with a and common meadows.

A pre-meadow with ``a`` is a disjoint union of finite commutative rings over
a lattice, glued by unital homomorphisms; see ``meadowenum.build``.
"""

from .build import (
    AssociatedPartition,
    DirectedLatticeOfRings,
    MeadowTable,
    associated_partition,
    assign_rings,
    build_meadow,
    check_composition,
    enumerate_labelings,
    enumerate_premeadows,
    extract_directed_lattice,
    lower_bound_witnesses,
    make_directed_lattice,
    meadow_isomorphic,
    with_unique_homs,
)
from .catalog import export_dot, load_catalog, save_catalog
from .errors import (
    AxiomViolation,
    CapExceeded,
    CompositionError,
    DomainError,
    FormatError,
    MeadowError,
    NotCommon,
    UnsupportedFactorization,
)
from .lattices import (
    HasseCover,
    Lattice,
    chain,
    enumerate_lattices,
    hasse_covers,
    is_lattice,
    lattice_automorphisms,
    lattice_from_covers,
    make_lattice,
)
from .partitions import AdmissiblePartition, admissible_partitions, is_admissible, prime_support
from .ring_enum import RingCatalog, brute_force_rings, enumerate_rings, structured_rings
from .rings import (
    RingTable,
    UnitalHom,
    construct_witness_hom,
    cyclic_ring,
    enum_homs,
    is_isomorphic,
    is_unit,
    make_ring,
    product_ring,
    zero_ring,
)
from .verify import (
    AxiomReport,
    JSet,
    check_common_axioms,
    check_premeadow_axioms,
    check_premeadow_with_a,
    compute_Jx,
    construct_inverse,
    is_common_meadow,
    search_inverse,
)

__version__ = "0.1.0"
