"""HTTP service exposing the emission engine as a JSON API."""

from .app import create_app

__all__ = ["create_app"]
