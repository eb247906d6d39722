from matkit.dense import herm_eigvals, kron, mat_exp, partial_trace, von_neumann_entropy

__all__ = ["herm_eigvals", "kron", "mat_exp", "partial_trace", "von_neumann_entropy"]
