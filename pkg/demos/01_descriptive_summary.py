"""Summarize the bundled monthly backlog dataset.

Walks the descriptive layer: full summary of one column, the quartile
convention, and the fence-based outlier screen.
"""

from stattree import boxplot_stats, builtin_table2, classify_outliers, describe

ds = builtin_table2()
diff = list(ds.column("Difference (Expected - Held)").values)

s = describe(diff)
print("Difference (Expected - Held), n =", s.n)
print(f"  mean    {s.mean:10.3f}")
print(f"  median  {s.median:10.3f}")
print(f"  min/max {s.min:10.3f} {s.max:10.3f}  (range {s.range:.3f})")
print(f"  q1/q3   {s.q1:10.3f} {s.q3:10.3f}")
print(f"  stddev  {s.stddev:10.3f}  (variance {s.variance:.3f})")
print("  modes  ", list(s.modes) if s.modes else "none (all values distinct)")

# quartiles use (n+1)*p positions with linear interpolation, so with
# n=16 the quarter points fall between order statistics
b = boxplot_stats(diff)
print()
print("boxplot geometry:")
print(f"  whiskers [{b.whisker_low:.3f}, {b.whisker_high:.3f}], "
      f"box [{b.q1:.3f}, {b.q3:.3f}], median {b.median:.3f}")
print("  flagged points:", list(b.flagged_points) or "none")

rep = classify_outliers(diff)
print()
print("outlier screen (1.5x and 3x fence rule):")
print("  inner fences", rep.inner_fences)
print("  outer fences", rep.outer_fences)
print("  mild:   ", list(rep.mild) or "none")
print("  extreme:", list(rep.extreme) or "none")
