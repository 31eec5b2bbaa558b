"""Face posets of permutahedra, biassociahedra and multiplihedra,
together with the free-PROP fraction calculus relating them."""

from .trees import (
    LEAF,
    PlanarTree,
    contract_edge,
    contraction_map,
    enumerate_trees,
    face_poset_associahedron,
    tree_leq,
    vertex_order,
)
from .leveled import (
    ComplementaryPair,
    OrderedBipartition,
    bipermutahedron_poset,
    enumerate_leveled_pairs,
    gamma_decode,
    gamma_encode,
    opet_iso_check,
    opet_step,
    pair_leq,
    restrict,
    tau,
)
from .posets import FinitePoset, isomorphic
from .zones import (
    ZonePair,
    biassociahedron_poset,
    closure,
    enumerate_zone_pairs,
    pi_section,
    project,
    relative_heights_check,
    zone_leq,
    zone_type,
)
from .propterms import (
    BlockPermutation,
    PropTerm,
    fraction,
    hcompose,
    iota_embed,
    is_special,
    sigma,
    term_eq,
    theorem_c_check,
    unit,
    varpi,
    varpi_expr,
    vcompose,
)
from .multipli import (
    DiaphragmTree,
    PaintedTree,
    diaphragm_leq,
    diaphragm_to_painted,
    enumerate_painted,
    multiplihedron_poset,
    prop_d_check,
    zone_to_diaphragm,
)

__all__ = [
    "LEAF",
    "BlockPermutation",
    "ComplementaryPair",
    "DiaphragmTree",
    "FinitePoset",
    "OrderedBipartition",
    "PaintedTree",
    "PlanarTree",
    "PropTerm",
    "ZonePair",
    "biassociahedron_poset",
    "bipermutahedron_poset",
    "closure",
    "contract_edge",
    "contraction_map",
    "diaphragm_leq",
    "diaphragm_to_painted",
    "enumerate_leveled_pairs",
    "enumerate_painted",
    "enumerate_trees",
    "enumerate_zone_pairs",
    "face_poset_associahedron",
    "fraction",
    "gamma_decode",
    "gamma_encode",
    "hcompose",
    "iota_embed",
    "is_special",
    "isomorphic",
    "multiplihedron_poset",
    "opet_iso_check",
    "opet_step",
    "pair_leq",
    "pi_section",
    "project",
    "prop_d_check",
    "relative_heights_check",
    "restrict",
    "sigma",
    "tau",
    "term_eq",
    "theorem_c_check",
    "tree_leq",
    "unit",
    "varpi",
    "varpi_expr",
    "vcompose",
    "vertex_order",
    "zone_leq",
    "zone_to_diaphragm",
    "zone_type",
]
