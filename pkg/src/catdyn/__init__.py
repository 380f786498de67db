"""Finite, executable models of dynamical systems as enriched functors."""
