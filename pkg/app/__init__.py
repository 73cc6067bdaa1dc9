__all__ = ["core", "schemas", "api", "services", "models", "cli"]
