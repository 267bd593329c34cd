"""Exact construction and verification of group-graded algebras and bimodules,
with machine-checked graded Morita equivalences."""

from .exactmath import (GFElement, Matrix, PrimeField, QQ, RationalField,
                        field_from_token, invert, kernel_basis, solve_linear)
from .groups import (FiniteGroup, Permutation, WreathElement, cyclic_group,
                     direct_product, symmetric_group, tuple_permute, wreath_group)
from .galgebra import (GradedAlgebra, Subspace, Unit, UnitSearch, algebra_generators,
                       centralizer, component, group_algebra, identity_component_algebra,
                       is_crossed_product, make_graded_algebra, opposite)
from .gacted import (ActedAlgebra, CentralizerAction, StructureMap, attach_action,
                     canonical_structure_map, induced_centralizer_action,
                     make_structure_map, scalar_structure_map, trivial_action)
from .gbimod import (BimoduleMap, GradedBimodule, IsoResult, MoritaResult, dual,
                     find_isomorphism, hom_space, make_bimodule, regular_bimodule,
                     tensor_over, verify_morita)
from .constructions import (WreathInduction, tensor_acted, tensor_algebras,
                            tensor_bimodules, tensor_structure_maps, tensor_units,
                            wreath_acted, wreath_algebra, wreath_bimodule,
                            wreath_induction, wreath_structure_map, wreath_units)
from .errors import DocumentError, InternalCheckError, ValidationError

__version__ = "0.1.0"
