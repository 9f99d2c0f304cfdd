from .rep import (ExtSpace, Morphism, Rep, class_of, cokernel, direct_sum, euler, ext_dim, hom_basis, hom_dim,
                  is_ses, kernel, realize)
from .kronecker import (INF, DecompositionError, DimensionBoundError, Label, Preinj, Preproj, Regular,
                        ar_sequence, build_indec, decompose, describe, end_is_local, labels_within, omega,
                        parse_label)
from .points import (Adic, FiniteDim, Generic, Prufer, StabilizationFailure, exact_subspace, ext_vanishes,
                     hom_exactness_at_point, hom_vanishes, parse_point)
from .closed import U_MAX, KClosedSetDescr, closure, fixtures, is_ziegler_closed
from .typeI import ExtTable, GldimWitness, expected_zero_cells, gldim2_witness, typeI_ext_table
from .typeII import TypeIIStructure, typeII_structure
