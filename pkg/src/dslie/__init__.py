"""dslie: exact modular Lie superalgebras from Cartan matrices and their
Duflo-Serganova homology, with a reproducible audit of reference tables."""

from .fields import FieldSpec, field_for
from .linalg import Matrix, mat_nullspace, mat_rank

__all__ = ["FieldSpec", "field_for", "Matrix", "mat_rank", "mat_nullspace"]

__version__ = "0.1.0"
