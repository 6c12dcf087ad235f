# %% [markdown]
# Sentence clusters seeded by the most important document, then filtered
# and ordered.

# %%
from ilpsumm import fixture_path
from ilpsumm.clustering import build_clusters, order_clusters, retain_clusters
from ilpsumm.corpus import load_document_set
from ilpsumm.importance import rank_documents

ds = load_document_set(fixture_path() / "docs")
d_imp = rank_documents(ds).chosen
clusters = build_clusters(ds, d_imp, threshold=0.5)
kept = retain_clusters(clusters, len(ds))
print(f"{len(clusters)} clusters around {d_imp}, {len(kept)} kept")

# %%
for ordering in ("mo", "apo"):
    ordered = order_clusters(kept, ordering, ds.sentence_counts())
    print(ordering, [c.cluster_id for c in ordered])

# %%
for c in order_clusters(kept, "mo"):
    print(f"cluster {c.cluster_id}:")
    for s in c.members:
        print(f"   {s.doc_id}#{s.index_in_doc}: {s.text}")
