# %% [markdown]
# # Null distribution of the sequential p-value
#
# With fixed (here: constant zero) CATE estimates each fold statistic is
# exactly standardised given the past, so the pooled sequential p-value
# should be uniform. We bin 1000 replications into deciles.

# %%
import numpy as np

from hetseq import DgpConfig, LearnerSpec, RunConfig, SimConfig
from hetseq.aggregate import Method
from hetseq.simharness import replicate

cfg = SimConfig(dgp=DgpConfig(n=1000, p=10),
                run=RunConfig(learner=LearnerSpec("zero"), scheme="sequential", degenerate_policy="skip"),
                reps=1000, base_seed=99)
ps = np.array([replicate(cfg, r).results[Method.SEQUENTIAL].p for r in range(1, cfg.reps + 1)])
counts, _ = np.histogram(ps, bins=10, range=(0, 1))
print("decile counts:", counts)
srt = np.sort(ps)
i = np.arange(1, srt.size + 1)
print("KS distance:", max(np.max(i / srt.size - srt), np.max(srt - (i - 1) / srt.size)))
