"""
Distinguish - asymmetric binary matrices and the cost of 2-distinguishing the hypercube.
"""
