"""
Utility functions for ncpoisson
"""
