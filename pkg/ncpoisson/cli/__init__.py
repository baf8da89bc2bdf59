"""
Command-line interface for ncpoisson
"""
