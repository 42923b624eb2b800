"""Smooth characters of split compact tori: classification, Roche filtrations, Satake targets."""

__version__ = "0.1.0"
