"""Test package for mubkit."""
