"""Descending a graded space into a small subalgebra, step by step.

Every step swaps one collapsing form for the lower-degree factors of
its witness; the dimension sequence strictly drops in the well-order
that compares the largest differing index, so the walk must end.  The
final output comes with machine-checked certificates: each original
form is a member of the algebra generated by the output, and the output
is tested for being a regular sequence.

Run from the repository root:

    python demos/descent_walkthrough.py
"""

import random

from smallsub import (GF, Form, GradedSpace, ThresholdPolicy, parse_polynomial,
                      small_subalgebra, subalgebra_membership)


def show_trace(label, trace):
    print(f"--- {label} ---")
    for step in trace.steps:
        eq = " + ".join(f"({g})*({h})" for g, h in step.witness.pairs)
        print(f"  {tuple(step.before)} -> {tuple(step.after)}   "
              f"degree {step.degree}, regime {step.regime}")
        print(f"      {step.witness.target} = {eq}")
    gens = ", ".join(str(g) for g in trace.final_generators)
    print(f"  final generators ({len(trace.final_generators)}): {gens}")
    print(f"  membership of originals: {list(trace.membership)}")
    print(f"  regular sequence: {trace.regular_sequence}, "
          f"exhaustive: {trace.exhaustive}")
    print()


def main() -> None:
    F2, F3 = GF(2), GF(3)
    rng = random.Random(0)

    V = GradedSpace.from_forms([Form(parse_polynomial("x1*x2+x3*x4", F2, 4))])
    trace = small_subalgebra(V, ThresholdPolicy.maximal(), rng=rng)
    show_trace("one quadric of strength 1 over F2", trace)

    V = GradedSpace.from_forms([
        Form(parse_polynomial("x1", F3, 2)),
        Form(parse_polynomial("x1^2+x1*x2", F3, 2)),
    ])
    trace = small_subalgebra(V, ThresholdPolicy.maximal(), rng=rng)
    show_trace("a mixed-degree space over F3", trace)

    V = GradedSpace.from_forms([Form(parse_polynomial("x1^2+x2^2", F3, 2))])
    trace = small_subalgebra(V, ThresholdPolicy.constant(1), rng=rng)
    show_trace("an irreducible quadric with threshold 1 (no descent needed)", trace)

    trace = small_subalgebra(V, ThresholdPolicy.maximal(), rng=rng)
    show_trace("the same quadric under the maximal policy", trace)

    print("--- membership checks stand on their own ---")
    gens = [Form(parse_polynomial("x1+x2", GF(5), 2)),
            Form(parse_polynomial("x1-x2", GF(5), 2))]
    inside = parse_polynomial("x1*x2", GF(5), 2)
    print(f"x1*x2 in K[x1+x2, x1-x2]: {subalgebra_membership(inside, gens)}")
    squares = [Form(parse_polynomial("x1^2", GF(5), 2)),
               Form(parse_polynomial("x2^2", GF(5), 2))]
    outside = parse_polynomial("x1*x2", GF(5), 2)
    print(f"x1*x2 in K[x1^2, x2^2]:  {subalgebra_membership(outside, squares)}")


if __name__ == "__main__":
    main()
