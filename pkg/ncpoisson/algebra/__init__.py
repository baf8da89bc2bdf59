"""
Class 1 and Class 2 algebras: descriptors, elements, filtered bases and homomorphisms
"""
