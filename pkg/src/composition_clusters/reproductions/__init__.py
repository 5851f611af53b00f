"""Registered published results; every submodule appends to REPRODUCTION_REGISTRY on import."""
