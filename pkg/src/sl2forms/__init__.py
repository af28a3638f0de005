"""Exact computations with real structures on SL2(C)/H for finite H."""

from .catalog import (Fixture, minimal_completion, example_embedding, reproduce_extension_table,
                      reproduce_h1_table, reproduce_structure_table)
from .cyclo import CycNum, real_sign, zeta
from .descent import ExtensionOutcome, GammaAction, check_extension
from .embeddings import Embedding, embedding_from_json, is_complete, is_quasiprojective, validate_embedding
from .equipment import ColorOrbit, ProjPoint, color_orbit, diagram
from .realhom import Outcome, h1_enumerate, h1_table, sigma_c_locus_nonempty, structures_equivalent, validate_structure
from .sl2core import Label, Mat2, SigmaKind, apply_sigma, build_subgroup, normalizer_quotient, omega, parse_matrix

__version__ = "0.1.0"
