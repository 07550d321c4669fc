"""Exact equivariant K-theoretic vertex computations on C^3."""

from .charalg import LaurentCharacter, QSeries, RationalCharacter, SlopeFunctional
from .partitions import LeggedPartition3D, Partition2D, enumerate_partitions, parse_legs
from .vertexchar import normal_char, vertex_char
from .vertices import full_vertex, index_direct, index_preferred, index_vertex

__version__ = "0.1.0"

__all__ = [
    "LaurentCharacter", "QSeries", "RationalCharacter", "SlopeFunctional",
    "LeggedPartition3D", "Partition2D", "enumerate_partitions", "parse_legs",
    "normal_char", "vertex_char",
    "full_vertex", "index_direct", "index_preferred", "index_vertex",
    "__version__",
]
