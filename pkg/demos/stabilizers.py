"""Lie algebra stabilizers of limit planes and of M<2,2,2>."""
from borderrank.catalog import load_entry
from borderrank.complexity import glue
from borderrank.geometry import limit_plane
from borderrank.symmetry import LieAlgebraSpec, plane_stabilizer, tensor_stabilizer_dim
from borderrank.tensor import mat_mul_tensor

M = mat_mul_tensor(2, 2, 2)
for kinds in ("sl:sl:sl", "gl:gl:gl"):
    print(f"M<2,2,2> under {kinds}: stabilizer {tensor_stabilizer_dim(M, LieAlgebraSpec.for_space(kinds, M.space))}")

bclr = load_entry("bclr")
glued = glue(bclr, bclr).algorithm
for name, alg, kinds in (("glued", glued, "sl:sl:sl"), ("bclr", bclr, "gu:t:sl")):
    rep = plane_stabilizer(limit_plane(alg), alg.space, LieAlgebraSpec.for_space(kinds, alg.space))
    print(f"{name} plane under {kinds}: stab {rep.stab_dim}, orbit {rep.orbit_dim}, diagonal kernel {rep.kernel_diagonal}")
