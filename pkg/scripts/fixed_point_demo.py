"""Refinement history of the Sperner-based fixed-point search for a few maps.

    python scripts/fixed_point_demo.py
"""

from impossibility_lab.fixed_point import approx_fixed_point, constant_map, rotate_map, squash_map


def main():
    cases = [
        (rotate_map(2), 1e-3, 1),
        (rotate_map(2), 1e-3, 2),
        (constant_map((0.2, 0.3, 0.5)), 1e-2, 1),
        (squash_map(2, 0.25), 1e-3, 3),
    ]
    for f, eps, k0 in cases:
        r = approx_fixed_point(f, eps, k0=k0)
        point = ", ".join(f"{x:.4f}" for x in r.point)
        print(f"{f.description:<22} k0={k0:<3} eps={eps:g}  converged={r.converged}  "
              f"point=({point})  residual={r.residual:.2e} at k={r.subdivision}")
        print("    best residual by k:", ", ".join(f"{k}:{res:.3g}" for k, res in r.history))


if __name__ == "__main__":
    main()
