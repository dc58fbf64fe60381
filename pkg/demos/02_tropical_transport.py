# Carrying the base polytope across the exchange graph by tropicalized mutation.

# %%
from clusterpoly import golden
from clusterpoly.cli import format_matrix
from clusterpoly.flag import base_polytope_sl4, sl4_pipeline, sl4_start_seed, transport_string_polytope
from clusterpoly.polytope import f_vector, is_reflexive
from clusterpoly.tropical import apply_tropical, tropical_map

# %%
# the polytope at t0, once from the stored facet matrix and once from the string inequalities
p0 = base_polytope_sl4()
print(p0)
print("same polytope both ways:", transport_string_polytope() == p0)
print("f-vector:", f_vector(p0).as_tuple(), "reflexive:", is_reflexive(p0))

# %%
# the map mu_2 at t0 has two linear pieces, split along g2 = 0
m = tropical_map(sl4_start_seed(), 2)
print("g2 >= 0"); print(format_matrix(m.t_plus.to_int_rows()))
print("g2 <= 0"); print(format_matrix(m.t_minus.to_int_rows()))

# %%
p1 = apply_tropical(p0, m)
print(format_matrix([list(r) for r in zip(*(h.normal for h in p1.facets))]))
cols = sorted(zip(*golden.case_matrix(1)))
print("matches the stored matrix for t1:", sorted(h.normal for h in p1.facets) == cols)

# %%
# the whole graph: 13 tree edges carry the polytope, the other 8 edges are checked against it
pipe = sl4_pipeline()
for lab, r in pipe.realizations.items():
    via = "" if r.parent is None else f"  from t{r.parent} by mu_{r.direction}"
    print(f"t{lab:<2} {r.polytope.n_facets} facets, {r.polytope.n_vertices} vertices{via}")
print(len(pipe.cycle_checks), "non-tree edges agree")
