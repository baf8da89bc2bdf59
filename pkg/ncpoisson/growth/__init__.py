"""
Growth of filtered spans and algebraic independence probes
"""
