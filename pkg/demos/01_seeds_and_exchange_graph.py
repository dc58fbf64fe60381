# Seeds, mutation and the SL_4 exchange graph.
# Run cell by cell in an editor that understands "# %%", or as a plain script.

# %%
from clusterpoly.flag import sl4_start_seed, sl3_exchange_graph, sl4_exchange_graph
from clusterpoly.seeds import mutate_epsilon, quiver_arrows, seeds_equivalent

s0 = sl4_start_seed()
print("unfrozen:", s0.unfrozen, "frozen:", s0.frozen)
for row in s0.epsilon:
    print(row)

# %%
# mutation is an involution
s1 = mutate_epsilon(s0, 2)
print(quiver_arrows(s1))
print(mutate_epsilon(s1, 2) == s0)

# %%
# seeds are identified up to relabelling the unfrozen vertices
g = sl4_exchange_graph()
print(g.node_count, "seeds,", g.edge_count, "edges, 3-regular:", g.is_regular(3))
print(sl3_exchange_graph().node_count, "seeds for SL_3")

# %%
# every node is named after the drawn quiver it matches
for node in g.nodes:
    print(node.label.rjust(2), "reached by mutating along", node.path)

# %%
# mu_2 and mu_3 do not commute: the two orders end at different seeds (t2 and t9)
a = mutate_epsilon(mutate_epsilon(s0, 2), 3)
b = mutate_epsilon(mutate_epsilon(s0, 3), 2)
print(seeds_equivalent(a, b))
