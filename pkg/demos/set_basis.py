"""Set Basis reduces to CRR: border the matrix, pair it with an all-ones R,
solve, then map the reaction-level answer back to a basis."""
from crr.core import BitMatrix, bool_product
from crr.reduction import SbInstance, extract_sb_solution, reduce_sb, sb_solve, unpad_factors
from crr.solver.dispatch import solve

s = BitMatrix(["110", "011", "111"])
for k in (1, 2, 3):
    sb = SbInstance(s, k)
    inst = reduce_sb(sb)
    rec = solve(inst)
    direct = sb_solve(sb) is not None
    print(f"k={k}: CRR instance {inst.n}x{inst.n} / {inst.m}x{inst.m} -> {rec.outcome}; direct Set Basis: {direct}")
    if rec.model is not None:
        e, p = unpad_factors(*extract_sb_solution(rec.model), sb.n, sb.m)
        print("  basis rows:", p.to_rows(), " usage:", e.to_rows(), " E.P == S:", bool_product(e, p) == s)
