"""
Associated graded algebra: symbols and the gr-commutativity certificate
"""
