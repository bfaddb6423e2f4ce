"""Chromatic symmetric functions of labelled graphs in quotient algebras."""

__version__ = "0.1.0"
