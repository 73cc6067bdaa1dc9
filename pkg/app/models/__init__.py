# Immutable value types shared by the engines.
__all__ = ["diagrams", "ensembles", "functional", "laurent", "measure", "partition", "permutation", "series", "words"]
