'''Trees of minimum spectral radius among connected graphs with given order and independence number'''

__version__ = "0.1.0"
