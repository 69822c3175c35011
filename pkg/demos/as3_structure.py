"""Second-order structure of the 8-term BCLRS(3) algorithm."""
from borderrank.catalog import load_entry
from borderrank.geometry import limit_plane, limit_point_span
from borderrank.tensor import bclrs_tensor
from borderrank.verify import jet_tables, limit_points, order_profile

alg = load_entry("as3")
jt = jet_tables(alg)
print("first-order chart")
for line in jt.chart(1):
    print("  " + line)

form, tangent = jt.sums["second_form"], jt.sums["second_tangent"]
print("II-form part:", form.nnz, "entries; tangent part:", tangent.nnz, "entries")
print("sum is the target:", form + tangent == bclrs_tensor(3))

print("\norder profile")
for line in order_profile(alg).lines():
    print("  " + line)

E = limit_plane(alg)
S = limit_point_span(limit_points(alg), alg.space)
print(f"\nlimit plane dim {E.dim}, limit points span dim {S.dim}")
