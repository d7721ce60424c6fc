"""Weak order lattices of Weyl groups and preprojective algebra modules."""
