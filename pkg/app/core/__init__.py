__all__ = ["config", "errors", "json_response", "cache_utils"]
