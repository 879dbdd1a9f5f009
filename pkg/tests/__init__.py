"""Tests for fractalqm."""
