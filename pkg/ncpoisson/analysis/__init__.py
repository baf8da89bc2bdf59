"""
Adjoint-action analysis: C(z), N(z), D(z), F(z), eigenvalues and element types
"""
