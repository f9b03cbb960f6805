"""Catalog of the permutation groups used in the tables: construction,
normalizers in the symmetric group, and cross-ratio helpers."""

from .crossratio import cross_ratio_class, cross_ratio_classes, pgl2_four_subset_orbit_count
from .fields import FiniteField, field_make
from .groups import GroupSpec, ProjectiveLine, build, parse_spec
from .normalizers import brute_normalizer, normalizer_in_sym, normalizer_spec, normalizes
