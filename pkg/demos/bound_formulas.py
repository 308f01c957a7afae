"""The explicit bound formulas and the descent recursion.

Prints the closed forms for spaces of quadrics and cubics, the
characteristic branches, the derivative-ideal threshold, and small
instances of the recursion that turns per-degree thresholds into a
generator-count bound (and from there into a projective-dimension
bound for matrix cokernels).

Run from the repository root:

    python demos/bound_formulas.py
"""

from smallsub import (BoundTable, B_recursion, cubic_eta_A, phi, quadric_B,
                      quadric_thresholds, stillman_C)


def main() -> None:
    print("=== quadric spaces ===")
    for n in (2, 3, 4):
        print(f"  n={n}: subalgebra generators <= {quadric_B(n)}")
    for n, eta in ((1, 1), (3, 2), (2, 3)):
        reg, reta = quadric_thresholds(n, eta)
        print(f"  n={n}, eta={eta}: strength >= {reg} forces regular "
              f"sequences, >= {reta} forces R_{eta}")

    print()
    print("=== cubic spaces, by characteristic ===")
    for char in (0, 2, 3):
        triple = cubic_eta_A(0, 0, 1, 1, char)
        print(f"  single cubic, eta=1, char {char}: thresholds {triple}")
    print(f"  (0,1,1), eta=1, char 0: {cubic_eta_A(0, 1, 1, 1, 0)}")

    print()
    print("=== derivative-ideal threshold ===")
    print(f"  char does not divide d: phi(h=7, d=3) = {phi(7, 3, characteristic=2)}")
    print(f"  char 3, d=3, h=1 via the degree-2 composition: "
          f"{phi(1, 3, characteristic=3)}")

    print()
    print("=== descent recursion on small sequences ===")
    table = BoundTable.default(eta=1)
    for delta in ((3,), (0, 1), (1, 1), (0, 2)):
        print(f"  B{delta} = {B_recursion(delta, table)}")

    print()
    print("=== projective dimension bound for matrix cokernels ===")
    toy = BoundTable(base={1: 0, 2: 1})
    for m, n, d in ((1, 1, 1), (2, 3, 1), (1, 2, 2)):
        print(f"  C(m={m}, n={n}, d={d}) = {stillman_C(m, n, d, toy)}")
    print("  (toy degree-2 table; the defaults grow astronomically fast)")


if __name__ == "__main__":
    main()
