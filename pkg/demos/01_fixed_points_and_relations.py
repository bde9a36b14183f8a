"""Walk through the combinatorial layer on the first Hirzebruch surface.

The model is the 2 x 4 matrix whose columns are the divisor classes
u_1 = u_2 = p_1, u_3 = p_2, u_4 = p_2 - p_1, together with a chamber point in
the open first quadrant.  Everything below is exact.
"""

from qtoric import (
    degree_pairing,
    enumerate_fixed_points,
    kirwan_relations,
    mori_cone_membership,
    mori_generators,
    sample_context,
    spectrum_point_count,
    verify_relations_at_fixed_points,
)
from qtoric.models import hirzebruch

data = hirzebruch()
names = data.lambda_names

print(f"model {data.name}: K={data.K}, N={data.N}, omega={data.omega}")
print()

print("fixed points (column subsets whose cone contains omega):")
for fp in enumerate_fixed_points(data):
    one_based = tuple(j + 1 for j in fp.J)
    p_str = ", ".join(m.format(names) for m in fp.p_monomials)
    u_str = ", ".join(m.format(names) for m in fp.u_monomials)
    print(f"  J = {one_based}  det = {fp.det:+d}   P = ({p_str})   U = ({u_str})")
print()

print("degree pairings D_j(d) = sum_i d_i m_ij:")
for d in [(1, 0), (0, 1), (1, 1)]:
    print(f"  D({d}) = {degree_pairing(data, d)}")
print()

print("effective-cone membership of d = (1, 0), per fixed point:")
overall, flags = mori_cone_membership(data, (1, 0))
for fp, flag in zip(enumerate_fixed_points(data), flags):
    print(f"  alpha = {tuple(j+1 for j in fp.J)}: {flag}")
print(f"  overall: {overall};  cone generators: {mori_generators(data)}")
print()

print("minimal multiplicative relations (empty-intersection subsets):")
for rel in kirwan_relations(data):
    factors = " * ".join(f"(1 - U_{j+1})" for j in rel.J)
    print(f"  {factors} = 0")

ctx = sample_context(data.N, seed=7)
report = verify_relations_at_fixed_points(data, ctx)
print(f"relations vanish on every fixed point: {report['ok']}")
count = spectrum_point_count(data, ctx)
print(f"isolated solutions of the relation equations at a generic sample: {count}")
