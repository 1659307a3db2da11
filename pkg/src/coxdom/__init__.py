"""Root systems of finite-rank Coxeter groups and the dominance hierarchy."""

from .datum import CoxeterDatum, load_datum, make_datum, parse_datum
from .dihedral import (
    ChainPosition,
    DihedralFrame,
    canonical_pair,
    canonical_positions,
    chain_position,
    dihedral_roots,
    verify_dominance_pair,
)
from .dominance import (
    DominanceRecord,
    HierarchyLevel,
    LawCheck,
    check_laws,
    dominated_set,
    dominates,
    elementary_roots,
    hierarchy,
)
from .oracle import GroupElement, Verdict, cayley_ball, depth_oracle, dominance_oracle, nset_oracle
from .roots import (
    Word,
    depth,
    enumerate_roots,
    inner,
    inversion_set,
    is_positive,
    minimal_word,
    precedes,
    reflect_root,
    reflect_simple,
)
from .scalar import ScalarClass, c_sequence, classify

__version__ = "0.1.0"

__all__ = [
    "CoxeterDatum",
    "ChainPosition",
    "DihedralFrame",
    "DominanceRecord",
    "GroupElement",
    "HierarchyLevel",
    "LawCheck",
    "ScalarClass",
    "Verdict",
    "Word",
    "c_sequence",
    "canonical_pair",
    "canonical_positions",
    "cayley_ball",
    "chain_position",
    "check_laws",
    "classify",
    "depth",
    "depth_oracle",
    "dihedral_roots",
    "dominance_oracle",
    "dominated_set",
    "dominates",
    "elementary_roots",
    "enumerate_roots",
    "hierarchy",
    "inner",
    "inversion_set",
    "is_positive",
    "load_datum",
    "make_datum",
    "minimal_word",
    "nset_oracle",
    "parse_datum",
    "precedes",
    "reflect_root",
    "reflect_simple",
    "verify_dominance_pair",
    "__version__",
]
