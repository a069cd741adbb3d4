"""NodeTrix-style layout engine for flat clustered graphs.

Given fixed matrix positions and fixed row-column orders, the package
assigns inter-cluster edges to matrix sides so that every edge is an
xy-monotone segment and crossings between edges incident to a common
matrix are eliminated (exact 2-SAT decision) or minimized (MAX-2-SAT
heuristic), and serves the computation to an interactive editor.
"""

__version__ = "0.1.0"
