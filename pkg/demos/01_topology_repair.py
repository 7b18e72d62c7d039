"""
Repairing messy street-network topology.

Builds a small network with every defect the fixer handles: a duplicated
street, a survey point splitting one street into two halves, a spur that
ends on another street's interior, and two nodes a metre apart.
"""
import numpy as np

from streetmorph import build_network, fix_topology, topology_violations

lines = [
    [(0, 0), (100, 0)],
    [(100, 0), (200, 0)],          # needless split at (100, 0)
    [(0, 0), (0, 100)],
    [(0, 0), (0, 100)],            # duplicated geometry
    [(50, 50), (50, 0)],           # endpoint resting on the first street
    [(50.9, 0.4), (130, 60)],      # starts ~1 m from the junction above
    [(200, 0), (200, 100), (0.0, 100.0)],
]

network = build_network([np.asarray(l, dtype=float) for l in lines])
print("raw edges:", len(network.edges))
for problem in topology_violations(network):
    print("  -", problem)

fixed = fix_topology(network)
print("fixed edges:", len(fixed.edges))
print("violations left:", topology_violations(fixed))

# the spur now meets the street at a real node
for nid in sorted(fixed.nodes):
    x, y = fixed.nodes[nid].coordinate
    print(f"  node {nid}: ({x:.2f}, {y:.2f})  degree {fixed.degree(nid)}")

# running the fixer again returns the identical object
print("idempotent:", fix_topology(fixed) is fixed)
