"""Exact computational Lie theory for covariant algebras of finite cyclic groups."""

__version__ = "0.1.0"
