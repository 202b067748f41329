"""smforge: certified computations with powers of singular moduli."""

__version__ = "0.1.0"
