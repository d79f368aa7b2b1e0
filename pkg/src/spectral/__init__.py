"""
Fourier substrate and harmonic test functions
"""
