# %% [markdown]
# ROUGE-2, ROUGE-L and ROUGE-SU4 on toy pairs and on the fixture reference.

# %%
from ilpsumm import fixture_path
from ilpsumm.corpus import load_references
from ilpsumm.rouge import RougeConfig, Truncation, evaluate_text, rouge_l, rouge_n, truncate

raw = RougeConfig(truncation=Truncation(), stemming=False)
print(rouge_n("a b c", ["a b d"], 2, raw).recall)
print(rouge_l("a c", ["a b c"], raw).recall, rouge_l("c b a", ["a b c"], raw).recall)

# %%
refs = load_references(fixture_path() / "refs")
print(truncate(refs[0], Truncation.parse("words:12")))
for name, s in evaluate_text(refs[0], refs).items():
    print(name, round(s.recall, 4))
