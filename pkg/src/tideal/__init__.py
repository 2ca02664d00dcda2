"""Exact computations on multilinear consequences of x^n = 0."""
