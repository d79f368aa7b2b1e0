"""
Error messages and report storage for WaveAudit
"""
