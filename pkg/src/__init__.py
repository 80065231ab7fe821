"""
condalg - finite conditional algebras and their dual frames
"""

__version__ = "1.0.0"
