"""Exact finite computations behind the stable reduction of the Lubin-Tate tower for GL_2.

Modules: exact_values (cyclotomic integers), finite_field, curves,
finite_groups, local_fields, orders, dual_graph, cli.
"""

__version__ = "0.1.0"
