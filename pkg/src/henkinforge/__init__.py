"""henkin-forge: an executable first-order logic workbench.

Proof checking and cut elimination, Henkin model construction, Goedel-numbered
provability and consistency, the halting-to-validity reduction, and exact
constructible-field models of plane geometry with machine-checkable
independence certificates.
"""

__version__ = "0.1.0"
