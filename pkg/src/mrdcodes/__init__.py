"""Additive rank-metric (MRD) codes over small finite fields."""

from .matrix import MatrixGF, Subspace, gaussian_binomial
from .codes import AdditiveCode, expected_min_rank_count
from .constructions import (Presemifield, delsarte_gabidulin,
                            field_spread_set, presemifield_from_multiplication,
                            semifield_dual, semifield_transpose,
                            trombetti_zhou, twisted_gabidulin)
from .equivalence import (EquivalenceWitness, are_equivalent,
                          automorphism_group, classify_up_to_equivalence,
                          fingerprint, left_idealiser, min_distance_subcodes,
                          right_idealiser)
from .spreads import (decompose_as_two_presemifields,
                      extract_semifield_subcodes, is_maximal_partial_spread,
                      kernel_space_family, partial_spread_of)
from .classify import (ClassificationReport, classify_dminus1,
                       classify_rectangular, classify_semifields, detensorize,
                       extend_code, quasi_mrd_census, tensorize,
                       trilinear_form)
from .catalog import (CatalogEntry, bundled_catalog_path, load_catalog,
                      load_report, save_catalog, save_report)

__version__ = "0.1.0"
