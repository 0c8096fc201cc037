"""
pd-schauder - Schauder-basis vectorization of signed persistence diagrams
"""

__version__ = "0.1.0"
