__all__ = ["moments", "cumulants", "transforms", "runs"]
