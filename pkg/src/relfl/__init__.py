"""Exact verification of local fundamental-lemma identities at small rank."""

__version__ = "0.1.0"
