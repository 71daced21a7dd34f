# %% [markdown]
# # The two-group GATES fold statistic
#
# One evaluation fold, eight units. We split them at the median of a
# (made up) CATE prediction and compare the treatment effect in the top
# half with the one in the bottom half.

# %%
import numpy as np

from hetseq import Dataset, assign_groups, contrast, jackknife_se, welch_se

tau_hat = np.array([-0.4, -0.1, 0.0, 0.2, 0.5, 0.6, 0.9, 1.3])
groups = assign_groups(tau_hat)
print("groups:", groups)

# %% [markdown]
# Outcomes are chosen so the contrast is easy to check by hand:
# top half treated {2, 4}, control {1, 1}; bottom half treated {1, 3},
# control {2, 2}. The contrast is (3 - 1) - (2 - 2) = 2.

# %%
y = np.array([1.0, 3.0, 2.0, 2.0, 2.0, 4.0, 1.0, 1.0])
d = np.array([1, 1, 0, 0, 1, 1, 0, 0])
fold = Dataset(tau_hat[:, None], d, y)
ev = np.arange(8)

stat = contrast(fold, ev, groups)
print(f"delta = {stat.delta}, jackknife se = {stat.sigma:.4f}, Welch se = {stat.sigma_welch:.4f}")
print(f"T = {stat.t:.4f}, p = {stat.p:.4f}")

# %% [markdown]
# With equal cells of size q the delete-one jackknife variance is the
# Welch variance times ((m-1)/m) * q/(q-1); here m = 8, q = 2.

# %%
ratio = jackknife_se(fold, ev, groups) ** 2 / welch_se(fold, ev, groups) ** 2
print(ratio, 7 / 8 * 2)
