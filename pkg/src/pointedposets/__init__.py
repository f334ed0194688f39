"""
Exact computations on pointed and multi-pointed partition posets.
"""

__version__ = "0.1.0"
