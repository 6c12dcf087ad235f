# %% [markdown]
# Word-graph fusion of two related sentences and of a fixture cluster.

# %%
from ilpsumm.textcore import pos_tag, tokenize
from ilpsumm.wordgraph import PathGenConfig, build_graph, filter_paths, k_shortest_paths

s1 = ("The American killed in the crash was 31-year-old Seth J. Foti, "
      "a diplomatic courier carrying classified information.")
s2 = "31-year-old Seth Foti was carrying pouches containing classified information."
sents = [pos_tag(tokenize(s)) for s in (s1, s2)]
g = build_graph(sents)
shared = [n.label for n in g.nodes[2:] if n.freq > 1]
print(len(g), "nodes; shared:", shared)

# %%
paths = k_shortest_paths(g, PathGenConfig(), k=10)
for p in paths:
    print(f"{p.cost:7.3f}  {p.text}")

# %%
# drop short paths and near copies of the inputs
for p in filter_paths(paths, sents, PathGenConfig(min_path_len=8)):
    print(p.text)

# %%
print(g.to_dot("example")[:400])
