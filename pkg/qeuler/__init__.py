"""
qeuler - generalized q-Euler numbers.

Exact computation of E_{n|k}(q), the inversion generating function of the
permutations whose descent set is {k, 2k, 3k, ...}, with brute-force
oracles and mechanical checks of its divisibility properties.
"""

__version__ = "0.1.0"
