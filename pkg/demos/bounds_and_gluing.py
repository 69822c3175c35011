"""Strassen lower bounds next to the upper bounds obtained by gluing."""
from borderrank.catalog import load_entry
from borderrank.complexity import glue, strassen_lower_bound, upper_bound_table
from borderrank.tensor import bclrs_tensor, mat_mul_tensor
from borderrank.verify import verify_border_rank

for m in (2, 3, 4):
    print(f"bclrs({m}) lower bound {strassen_lower_bound(bclrs_tensor(m)).bound}")

bclr, as3 = load_entry("bclr"), load_entry("as3")
for left, right, n in ((bclr, bclr, 3), (bclr, as3, 4)):
    rep = glue(left, right)
    ok = verify_border_rank(rep.algorithm, mat_mul_tensor(n, 2, 2)).passed
    low = strassen_lower_bound(mat_mul_tensor(n, 2, 2)).bound
    print(f"M<{n},2,2>: glued {left.id}+{right.id} has {rep.algorithm.r} terms (verified {ok}), lower bound {low}")

for row in upper_bound_table(8):
    print(row)
