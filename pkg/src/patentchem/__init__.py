"""Core-compound identification and OCSR ensemble arbitration for patent chemistry."""

__version__ = "0.1.0"
