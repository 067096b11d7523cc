"""Numerical engine: sieve, constants, kernels, special functions, zero sums, series."""
