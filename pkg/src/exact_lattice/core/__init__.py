from .universe import (IncompletePool, NotEnoughInjectives, Realization, Rejection, ShortExactSeq,
                       Step, StructuralError, Summand, Universe)
from .structure import ExactStructure, hom_exact_structure, maximal, split
from .lattice import ClosedProvenance, UnsupportedJoin, join, meet, meet_all
from .axioms import AxiomReport, check_exact_axioms
from .ext import ExtGroup, ext1
from .coresolution import Coresolution, GldimResult, gldim, injective_coresolution, injectives
