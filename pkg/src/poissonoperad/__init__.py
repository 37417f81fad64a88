"""Exact computations with the classical operad of graphs over U(d) and
with Poisson pseudoalgebras.

Submodules: ``hopf`` (PBW arithmetic), ``graphs`` (the cooperad of n-graphs),
``hmodule`` (H-modules and pseudo-tensors), ``pseudoalg`` (brackets and their
axioms), ``operad`` (operad elements, box product, master elements) and ``cli``.
"""

from .hopf import Hopf, LieAlgebraSpec
from .graphs import Graph, cocompose, enumerate_acyclic, is_acyclic
from .hmodule import AlgebraElement, ModuleSpec, ParseError, PseudoTensor
from .pseudoalg import (PseudoAlgebraSpec, UnsupportedConversion, ValidationError, build_example,
                        load_spec, shipped_specs)
from .operad import (MasterElement, OperadElement, bracket, box_product, check_master, circle,
                     master_to_poisson, poisson_to_master, symmetric_action)

__all__ = [
    "Hopf", "LieAlgebraSpec", "Graph", "cocompose", "enumerate_acyclic", "is_acyclic",
    "AlgebraElement", "ModuleSpec", "ParseError", "PseudoTensor",
    "PseudoAlgebraSpec", "UnsupportedConversion", "ValidationError", "build_example", "load_spec",
    "shipped_specs", "MasterElement", "OperadElement", "bracket", "box_product", "check_master",
    "circle", "master_to_poisson", "poisson_to_master", "symmetric_action",
]
__version__ = "0.1.0"
