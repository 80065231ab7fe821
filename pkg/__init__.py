# condalg - finite conditional algebra toolkit
__version__ = "1.0.0"
