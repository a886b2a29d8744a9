"""Three-group runs: omnibus tests plus their follow-up comparisons.

The k>2 subtree either runs a one-way decomposition with Tukey-Kramer
follow-up or a Kruskal-Wallis with pairwise rank comparisons, depending
on the two gates. Both routes appear below.
"""

import json

from stattree import EngineConfig, analyze, builtin_table2, select_response_factor

ds = builtin_table2()

# parametric route: backlog change across small/medium/large caseloads
g = select_response_factor(ds, "Difference (Expected - Held)", "Cases Size")
rep = analyze(g, EngineConfig())
print("Difference ~ Cases Size")
print(f"  groups: {dict(zip(g.labels(), g.sizes()))}")
print(f"  omnibus F p={rep.primary.p_value:.6f}")
print(f"  follow-up ({rep.posthoc.family_method}):")
for c in rep.posthoc.comparisons:
    mark = "*" if c.significant_at_alpha else " "
    print(f"   {mark} {c.label_a} vs {c.label_b}: p={c.p_value:.4f}")
print()

# rank route: expected workload across the same grouping
g = select_response_factor(ds, "Expected Hours", "Cases Size")
rep = analyze(g, EngineConfig())
print("Expected Hours ~ Cases Size")
print(f"  omnibus {rep.primary.method} p={rep.primary.p_value:.6f}")
for c in rep.posthoc.comparisons:
    mark = "*" if c.significant_at_alpha else " "
    print(f"   {mark} {c.label_a} vs {c.label_b}: p={c.p_value:.4f}")
print()

# every report serializes to plain JSON for downstream tooling
blob = json.dumps(rep.to_dict(), indent=2)
print(f"serialized report: {len(blob)} bytes, "
      f"top-level keys {sorted(rep.to_dict())[:4]} ...")
