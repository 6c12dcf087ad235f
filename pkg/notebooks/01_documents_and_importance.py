# %% [markdown]
# Documents, term vectors and document importance.
# Loads the bundled flood fixture, then scores each document three ways.

# %%
from ilpsumm import fixture_path
from ilpsumm.corpus import load_document_set
from ilpsumm.importance import COSSIM, DOCSETSIM, LEXRANK, rank_documents
from ilpsumm.textcore import pos_tag, segment_sentences, tokenize

docs = fixture_path() / "docs"
ds = load_document_set(docs)
print(ds.doc_ids, ds.sentence_counts())

# %%
text = "Mr. J. Smith arrived. He left after 31-year-old Seth Foti's speech."
for s in segment_sentences(text):
    print([(t.surface, t.pos) for t in pos_tag(tokenize(s))])

# %%
# the three importance measures; docsetsim is the default
for method in (LEXRANK, COSSIM, DOCSETSIM):
    res = rank_documents(ds, method)
    scores = ", ".join(f"{d}={v:.4f}" for d, v in res.scores.items())
    print(f"{method:10s} -> {res.chosen:12s} {scores}")
