"""Anyon statistics on graphs: configuration complexes, homology, Morse data and gauge potentials."""

from .complex import ChainComplex, ConfigCell, Loop, ab_loop, build_config_complex, exchange_loop, y_loop
from .connectivity import block_decomposition, is_planar, tri_decomposition, vertex_connectivity
from .gauge import (
    GaugePotential,
    decompose_ab_s,
    flux,
    is_topological,
    lift_to_n,
    random_topological_potential,
    subdivide_potential,
    tight_binding,
)
from .graph import Graph, GraphError, load_graph, spanning_tree, subdivide
from .homology import FGAbelianGroup, cycle_class, homology_h1, smith_normal_form
from .morse import run_morse
from .statistics import predict_h1

__all__ = [
    "ChainComplex",
    "ConfigCell",
    "FGAbelianGroup",
    "GaugePotential",
    "Graph",
    "GraphError",
    "Loop",
    "ab_loop",
    "block_decomposition",
    "build_config_complex",
    "cycle_class",
    "decompose_ab_s",
    "exchange_loop",
    "flux",
    "homology_h1",
    "is_planar",
    "is_topological",
    "lift_to_n",
    "load_graph",
    "predict_h1",
    "random_topological_potential",
    "run_morse",
    "smith_normal_form",
    "spanning_tree",
    "subdivide",
    "subdivide_potential",
    "tight_binding",
    "tri_decomposition",
    "vertex_connectivity",
    "y_loop",
]
