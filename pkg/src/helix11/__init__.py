"""Constrained DNA codes over Z11: constructions, the trinucleotide
map, the run-breaking flip map, folding analysis, and certification."""

__version__ = "0.1.0"
