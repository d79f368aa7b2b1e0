"""
WaveAudit: pseudo-spectral free-surface water waves with a conservation-law audit engine
"""

__version__ = "0.1.0"
