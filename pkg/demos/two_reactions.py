"""Two-reaction network: derive S and R, reconstruct E and P, and show that
the answer need not be the network you started from."""
from crr import data
from crr.core import Reconstruction, derive_r, derive_s, incidence, total_graph, verify
from crr.ingest import instance_from_network, read_hypergraph
from crr.solver.brute import brute_force_models
from crr.solver.dispatch import solve

h = read_hypergraph(data.path("fig1.hyper"))
print("species:", " ".join(h.species))
for arc in h.arcs:
    print(f"  {arc.name}: {sorted(h.species[i] for i in arc.tail)} -> {sorted(h.species[i] for i in arc.head)}")

inst, stats = instance_from_network(h, "fig1")
print("\nS (species graph):")
print(inst.s)
print("R (reaction graph):")
print(inst.r)
print(f"p = {stats.p:.3f}, q = {stats.q:.3f}")

print("\ntotal graph [[S, E], [P, R]]:")
print(total_graph(h).t)

rec = solve(inst)
print(f"\nsolver: {rec.outcome} via {rec.solver_id} in {rec.wall_time * 1000:.1f} ms")
print("reconstructed E:")
print(rec.model.e)
print("same as the original incidence:", rec.model == Reconstruction(*incidence(h)))

# two different networks with the same S and R
a, b = read_hypergraph(data.path("fig3a.hyper")), read_hypergraph(data.path("fig3b.hyper"))
print("\nfig3a and fig3b give the same (S, R):", derive_s(a) == derive_s(b) and derive_r(a) == derive_r(b))
models = list(brute_force_models(instance_from_network(a)[0]))
print(f"verifying (E, P) pairs for that instance: {len(models)}")
print("all verify:", all(verify(instance_from_network(a)[0], m) for m in models))
