"""Incidence monoids of finite posets: idempotents, Green's relations and conjugacy."""

__version__ = "0.1.0"
