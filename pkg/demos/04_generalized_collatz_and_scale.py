# A three-branch residue-class-wise affine map, and the 3x+1 variant at n = 10^6.

import time

from orbitmat import run_analyze

phi_r = "rcwa:mod=3;0:1,0;1:2,1;2:5,-1;cut=1"
rep = run_analyze(phi_r, 50, verify=True)
print(rep.to_json(timings=False))

start = time.perf_counter()
big = run_analyze("collatz", 10**6, materialize_inverse=False)
print(f"n=10^6: degree {big.degree_m}, inverse nonzeros {big.inverse_nnz}, "
      f"{len(big.partition_pi)} height levels, {time.perf_counter() - start:.2f}s")
