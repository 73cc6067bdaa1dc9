__all__ = ["cumulants", "genus", "matrix_lab", "measures", "noncrossing", "perm_core", "sampling", "transforms", "verify"]
