"""Exact lattice and intersection-theory certificates for the two-isogeny
between double sextics branched over six lines and K3 surfaces polarized
by H + E7 + E7."""

__version__ = "0.1.0"
