"""ybverify: exact verification toolkit for the spinorial so(d) R-matrix."""

from .kernel import BACKEND, ExactScalar, SparseOperator, embed, embed_pair, kron, matmul

__all__ = [
    "BACKEND",
    "ExactScalar",
    "SparseOperator",
    "embed",
    "embed_pair",
    "kron",
    "matmul",
]

__version__ = "0.1.0"
