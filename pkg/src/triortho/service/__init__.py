"""HTTP service wrapping the verification commands."""

from .app import app

__all__ = ["app"]
