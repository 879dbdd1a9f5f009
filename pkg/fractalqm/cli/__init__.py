"""CLI module for fractalqm."""

from .main import main, main_entry

__all__ = ["main", "main_entry"]
