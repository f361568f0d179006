"""HTTP service surface (FastAPI app and request/response models)."""

from .app import DEFAULT_KG_PATH, create_app

__all__ = ["DEFAULT_KG_PATH", "create_app"]
