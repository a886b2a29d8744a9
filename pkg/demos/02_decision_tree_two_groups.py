"""Run the automatic test-selection tree on two-group questions.

Three runs on the bundled dataset: two reach the rank-based branch for
different reasons (one fails the normality gate, one the variance gate),
and a config change shows the parametric branch with the same data.
"""

from stattree import EngineConfig, analyze, builtin_table2, select_response_factor

ds = builtin_table2()


def show(report):
    print(f"{report.response_name} ~ {report.factor_name}")
    for step in report.trace.steps:
        print(f"  [{step.node}] -> {step.outcome}")
    print(f"  primary: {report.primary.method} p={report.primary.p_value:.6f}")
    print(f"  decision: {report.conclusion['decision']} "
          f"at alpha={report.config.alpha}")
    print()


# backlog change before vs after the process switch
g = select_response_factor(ds, "Difference (Expected - Held)", "Moment")
show(analyze(g, EngineConfig()))

# expected workload before vs after; unequal spreads push this one
# down the rank-based branch
g = select_response_factor(ds, "Expected Hours", "Moment")
show(analyze(g, EngineConfig()))

# the same question at a stricter alpha changes the conclusion only,
# never the routing
rep = analyze(g, EngineConfig(alpha=0.001))
print(f"same data at alpha=0.001: {rep.conclusion['decision']}")
print()

# lowering the size threshold swaps the normality method to the KS
# variant, which these groups pass, so the parametric branch runs
g = select_response_factor(ds, "Difference (Expected - Held)", "Moment")
show(analyze(g, EngineConfig(size_threshold=5)))
