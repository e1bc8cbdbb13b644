# %% [markdown]
# # Accuracy and work across eps
#
# The harness runs a whole sweep and writes a JSON report. Here the report is
# kept in memory and summarised: ratio to the exact diameter, the coarse set
# size, and how many diametrical pairs each stage carried forward.

# %%
from griddiam.harness import ExperimentConfig, GeneratorSpec, run

config = ExperimentConfig(
    methods=["paper", "agarwal"],
    eps=[1.0, 0.5, 0.25, 0.1, 0.05],
    generator=GeneratorSpec("uniform-ball", 4000, 3, 5),
    oracle=True,
)
report = run(config)

# %%
print(f"{'method':8s} {'eps':>5s} {'ratio':>8s} {'coarse':>7s} {'pairs2':>6s} {'pairs1':>6s}")
for rec in report["runs"]:
    ps = rec.get("phase_stats", {})
    print(f"{rec['method']:8s} {rec['eps']:5.2f} {rec['ratio']:8.5f} "
          f"{ps.get('n_S_hat2', ''):>7} {ps.get('pairs_level2', ''):>6} {ps.get('pairs_level1', ''):>6}")

# %% [markdown]
# Wall times sit in their own subtree so reports can be diffed without them.

# %%
for t, rec in zip(report["timings"], report["runs"]):
    print(rec["method"], rec["eps"], f"{t['wall_ms']:.1f} ms")
