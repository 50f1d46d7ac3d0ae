"""Signs of automorphisms of real bundles on determinant orientations."""

__version__ = "0.1.0"
