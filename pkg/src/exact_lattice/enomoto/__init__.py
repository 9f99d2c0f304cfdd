from .model import (ARModel, GeneratorLattice, ModelError, ModelUniverse, a2_model, a3_model, certify,
                    classify_by_gldim, enumerate_generators, lattice_dot, lattice_json, load_model,
                    model_from_json, order_reversal, structure_from_generator)
from .reps import QMorphism, QRep, Quiver
