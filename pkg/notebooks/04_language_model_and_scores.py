# %% [markdown]
# Trigram language model (train, write ARPA, read back) and the two path
# scores: TextRank informativeness and linguistic quality.

# %%
import tempfile
from pathlib import Path

from ilpsumm import fixture_path
from ilpsumm.lm import parse_arpa, train_counts, write_arpa
from ilpsumm.scoring import informativeness, linguistic_quality, lq_from_ll, textrank_words
from ilpsumm.textcore import pos_tag, tokenize

model = train_counts([fixture_path() / "docs"], k=0.1)
print(model.counts())
with tempfile.TemporaryDirectory() as tmp:
    arpa = Path(tmp) / "flood.arpa"
    write_arpa(model, arpa)
    print(arpa.read_text().splitlines()[:6])
    assert parse_arpa(arpa) == model

# %%
print("LL=-1 ->", lq_from_ll(-1.0))
for words in ["the mayor declared a state of emergency", "emergency a of declared mayor the state"]:
    print(f"{linguistic_quality(words.split(), model):.4f}  {words}")

# %%
cluster = [pos_tag(tokenize(s)) for s in (
    "Emergency crews evacuated more than 2,000 residents from low-lying neighborhoods.",
    "Rescue crews evacuated more than 2,000 residents from neighborhoods along the river.",
)]
tr = textrank_words(cluster)
top = sorted(tr.scores.items(), key=lambda kv: -kv[1])[:5]
print(top)
print("I =", informativeness(cluster[0], tr))
