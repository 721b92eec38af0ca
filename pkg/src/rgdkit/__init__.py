"""Verification and computation engine for commutator blueprints over GF(2)
on Coxeter systems."""

__version__ = "0.1.0"
