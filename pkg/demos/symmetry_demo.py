"""Discrete symmetries permuting the terms of bclr and m422."""
from borderrank.catalog import load_entry
from borderrank.symmetry import check_discrete_symmetry, parse_symmetry

bclr = load_entry("bclr")
rep = check_discrete_symmetry(bclr, parse_symmetry("transpose-cycle,swap:W", bclr.space),
                              groups=[["p1", "p2"], ["p3", "p4"], ["p5"]])
print("bclr:", rep.level, "swaps", rep.group_swaps(), "fixed", rep.fixed_terms())

m422 = load_entry("m422")
rep = check_discrete_symmetry(m422, parse_symmetry("perm:U:3-4-1-2", m422.space),
                              groups=[[1, 2, 3, 4, 5], [6, 7, 8, 9], [10, 11, 12, 13]])
print("m422:", rep.level, "swaps", rep.group_swaps(), "fixed", rep.fixed_groups())
