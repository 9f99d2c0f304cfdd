from .modules import (DvrModule, DvrMorphism, DvrRing, cokernel, ext_group, hom_generators, hom_group,
                      is_ses, smith_normal_form)
from .ext import ExtElement, baer_sum, class_of, p_action, rad_elements, rad_ext, realize
from .structures import ExponentSet, is_exact_EL, is_exact_EL_by_count, is_exact_Eprime
from .universe import R, T, DvrUniverse
from .ziegler import (ADIC, ClosedSet, DvrModel, classify_closed_sets, closure, gap_detect, gldim_EL,
                      periodic_coresolution)
from .dedekind import ZModule, dedekind_classify_closed, dedekind_ext_decompose
