# Sorting the fourteen polytopes into unimodular equivalence classes.

# %%
import networkx as nx

from clusterpoly import golden
from clusterpoly.equivalence import catalog_maps, class_preserving_automorphisms, fingerprint, verify_unimodular_map
from clusterpoly.flag import compute_all_polytopes, gp_polytope
from clusterpoly.polytope import is_combinatorially_isomorphic
from clusterpoly.verify import classification

polys = compute_all_polytopes()

# %%
for k, p in polys.items():
    fp = fingerprint(p)
    print(f"t{k:<2}", fp.f_vector, dict(fp.degree_histogram))

# %%
# t1 and t6 share an f-vector but not a face lattice
print(fingerprint(polys[1]).f_vector == fingerprint(polys[6]).f_vector)
print(is_combinatorially_isomorphic(polys[1], polys[6])[0])

# %%
c = classification()
print(c.classes)
for w in c.witnesses:
    print(f"t{w.source} -> t{w.target} by {w.method}")

# %%
# the printed coordinate changes, read as substitutions
for m in catalog_maps():
    src = gp_polytope(m["source_polytope"]) if "source_polytope" in m else polys[m["source"]]
    print(m["source"], "->", m["target"], m["image"], verify_unimodular_map(src, polys[m["target"]], m["map"]))

# %%
# the two reflections of the drawn graph, and nothing else, respect the classes
print(c.orbit_structure)
g = nx.Graph(tuple(e) for e in golden.load("figure4_edges.json")["edges"])
print(len(class_preserving_automorphisms(g, c.classes)), "class-preserving symmetries")
