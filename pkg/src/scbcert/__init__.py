"""Certified step-size coefficients for boundedness of linear multistep methods."""

__version__ = "0.1.0"
