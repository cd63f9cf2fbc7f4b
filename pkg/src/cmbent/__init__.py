"""Exact Walsh spectra and duals of the ternary bent monomials Tr(a x^((3^k+1)/2)) over GF(3^n)."""

__version__ = "0.1.0"
