"""Schur elements and semisimplicity criteria for cyclotomic Hecke-Clifford algebras."""
__version__ = "0.1.0"
