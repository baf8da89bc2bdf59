"""
Localization of Class 1 algebras at the powers of one element
"""
