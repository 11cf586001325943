"""Witness constructions for metric density of word-map images."""

from .words import Word, parse_word, classify, lcs_degree, WordSyntaxError
from .perms import Permutation, hamming_distance, evaluate_word
from .symmetric import Witness, approx, approx_isotypic, approx_power_word
from .ffield import Field, FqPoly, make_field
from .fox import su_certificate, specialize_pw, count_Wn
from .oracle import ImageReport, word_image_sym, exact_distance_sym, word_image_matrix
from .glapprox import MatrixFq, GLWitness, approx_gl, rank_distance

__all__ = [
    "Word",
    "parse_word",
    "classify",
    "lcs_degree",
    "WordSyntaxError",
    "Permutation",
    "hamming_distance",
    "evaluate_word",
    "Witness",
    "approx",
    "approx_isotypic",
    "approx_power_word",
    "Field",
    "FqPoly",
    "make_field",
    "su_certificate",
    "specialize_pw",
    "count_Wn",
    "ImageReport",
    "word_image_sym",
    "exact_distance_sym",
    "word_image_matrix",
    "MatrixFq",
    "GLWitness",
    "approx_gl",
    "rank_distance",
]
