"""Exact certificates for quaternion algebras, their orders and Kuga fiber spaces."""

__version__ = "0.1.0"
