"""Strength of forms: exhaustive search, witnesses, and the Jacobian bound.

Walks through the two sides of a strength computation:

  1) exhaustive collapse search over a small prime field, which either
     returns an exact witness equation F = sum G_i H_i or rules every
     candidate out,
  2) the extension-stable lower bound from the height of the ideal
     generated by F and its partial derivatives.

Run from the repository root:

    python demos/strength_and_collapse.py
"""

from smallsub import (GF, Form, find_collapse, full_report, parse_polynomial,
                      strength_lower_bound)


def main() -> None:
    F2, F5 = GF(2), GF(5)

    print("=== a reducible quadric has strength 0 ===")
    square = Form(parse_polynomial("x1^2", F2, 1))
    witness = find_collapse(square, 1)
    g, h = witness.pairs[0]
    print(f"x1^2 = ({g}) * ({h})   [{witness.k} pair]")

    print()
    print("=== the rank-4 quadric x1*x2 + x3*x4 over F2 ===")
    quadric = Form(parse_polynomial("x1*x2+x3*x4", F2, 4))
    print("1-collapse search:", find_collapse(quadric, 1))
    report = full_report(quadric)
    print(f"exact strength over F2: {report.exact}")
    print("witness pairs:",
          [(str(g), str(h)) for g, h in report.witness.pairs])
    print(f"Jacobian lower bound (any field extension): {report.jacobian_lower}")
    print(f"field caveat: {report.field_caveat} "
          "(exhaustive non-existence is specific to F2)")

    print()
    print("=== linear forms never collapse ===")
    linear = Form(parse_polynomial("x1+x2", F2, 2))
    print("strength of x1+x2:", full_report(linear).exact)

    print()
    print("=== the Jacobian bound alone, over F5 ===")
    for text in ("x1*x2+x3*x4", "x1^2", "x1^2+x2^2+x3^2"):
        form = Form(parse_polynomial(text, F5))
        print(f"strength({text}) >= {strength_lower_bound(form)}")


if __name__ == "__main__":
    main()
