# %% [markdown]
# The whole pipeline on the fixture: summary, diagnostics report and ROUGE.
# The same run is available from the shell as
#     ilpsumm summarize <docs> --report report.json
#     ilpsumm evaluate summary.txt <refs>

# %%
import json

from ilpsumm import PipelineConfig, fixture_path, run_pipeline
from ilpsumm.corpus import load_references
from ilpsumm.rouge import evaluate_text

cfg = PipelineConfig(input_dir=str(fixture_path() / "docs"), seed=0)
summary, report = run_pipeline(cfg)
print(summary.text)

# %%
print(json.dumps(report.to_dict()["paths"], indent=1))
for row in report.selected:
    print(f"cluster {row['cluster_id']}: I={row['I']:.3f} LQ={row['LQ']:.3f} T={row['T']} u={row['utility']:.4f}")

# %%
refs = load_references(fixture_path() / "refs")
for name, s in evaluate_text(summary.text, refs).items():
    print(f"{name}: R={s.recall:.4f} P={s.precision:.4f}")
