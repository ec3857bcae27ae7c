"""Unit test package for mubkit."""
