"""How far the centroid is from optimal as n grows, for each random family."""

from minpower import ratio_limit_experiment

NS = [5, 10, 20, 50, 100, 200]

for seed, family in enumerate(("uniform", "circle", "clusters")):
    rows = ratio_limit_experiment(seed, NS, trials=100, family=family)
    print(f"{family}:")
    print("     n   max rho   mean rho   bound")
    for r in rows:
        print(f"  {r.n:4d}  {r.max_rho:.6f}  {r.mean_rho:.6f}  {r.general_bound:.6f}"
              + ("" if r.within_bound else "  OVER"))
