"""A scaled-down segment sweep, end to end, with the two-panel plot.

The full reference sweep (T=8192, S=1..100, 100 trials) takes a couple of
minutes; this demo shrinks it to stay interactive while showing the same
phase structure: count-based aging wins on nearly stationary sources,
smoothing takes over once the source shifts often.
"""

from probsmooth.experiment import (
    ExperimentConfig,
    emit_csv,
    emit_plot,
    format_config,
    run_experiment,
)

config = ExperimentConfig(
    n=2,
    horizon=2048,
    segment_counts=tuple(range(1, 41, 3)),
    trials=30,
    seed=13,
    output="sweep_demo.csv",
)
print(format_config(config))

table = run_experiment(config, progress=lambda s: print(f"  finished S={s}"))
emit_csv(table, config.output)
emit_plot(table, "sweep_demo.svg")
print(f"\nwrote {config.output} and sweep_demo.svg")

print("\nmean redundancy (nats):")
models = table.models()
print("  S  " + "".join(f"{m:>9s}" for m in models))
for s in table.segment_counts():
    row = "".join(f"{table.mean(s, m):9.1f}" for m in models)
    print(f"{s:4d} {row}")

best_low = min(models, key=lambda m: table.mean(1, m))
top = table.segment_counts()[-1]
best_high = min(models, key=lambda m: table.mean(top, m))
print(f"\nbest at S=1: {best_low}; best at S={top}: {best_high}")
