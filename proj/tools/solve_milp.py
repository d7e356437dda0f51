"""MILP solve driver: reads a problem JSON, solves with scipy/HiGHS, writes a
result JSON. Invoked as: python3 solve_milp.py <problem.json> <result.json>."""
import json
import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

with open(sys.argv[1]) as f:
    spec = json.load(f)

n = spec["num_vars"]
c = -np.asarray(spec["objective"], dtype=float)  # maximize -> minimize

rows = spec["constraints"]
data, ri, ci = [], [], []
clb, cub = [], []
for k, row in enumerate(rows):
    for v, coef in zip(row["vars"], row["coefs"]):
        ri.append(k)
        ci.append(v)
        data.append(coef)
    rel, rhs = row["rel"], row["rhs"]
    clb.append(rhs if rel in ("eq", "ge") else -np.inf)
    cub.append(rhs if rel in ("eq", "le") else np.inf)

lb = np.asarray(spec["lower"], dtype=float)
ub = np.asarray(spec["upper"], dtype=float)
integrality = np.asarray(spec["integrality"], dtype=int)

constraints = None
if rows:
    A = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), n))
    constraints = LinearConstraint(A, np.asarray(clb), np.asarray(cub))

options = {
    "disp": bool(spec.get("verbose", False)),
    "presolve": True,
    "mip_rel_gap": float(spec.get("mip_rel_gap", 1e-4)),
    "time_limit": float(spec.get("time_limit", 172800.0)),
}

res = milp(c=c, constraints=constraints, integrality=integrality,
           bounds=Bounds(lb, ub), options=options)

out = {
    "status": int(res.status),
    "success": bool(res.success),
    "message": str(res.message),
    "objective": None if res.x is None else float(-res.fun),
    "mip_gap": float(getattr(res, "mip_gap", 0.0) or 0.0),
    "x": None if res.x is None else [float(v) for v in res.x],
}
with open(sys.argv[2], "w") as f:
    json.dump(out, f)
