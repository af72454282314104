"""Tests for the pyidpda toolkit."""
