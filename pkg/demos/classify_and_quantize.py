"""Walk one bracket through the whole pipeline.

Start from the diagonal rank-3 family, hide it behind a change of
coordinates, recover its case label, quantize it and check that the
quantized algebra has the right size in every degree.
"""

from quadpoisson import Matrix, Poly, from_case, jacobi_residual, transform
from quadpoisson.classify import classify, family_cubic
from quadpoisson.flatness import intersection_W, splitting_check
from quadpoisson.lang import format_bracket
from quadpoisson.quantize import diamond_residual, graded_dimension, relations, triangularize


def main() -> None:
    b = from_case("da", family_cubic("da", c=0), lam1=1, lam2=2)
    A = Matrix([[1, 1, 0], [0, 1, 2], [1, 0, 1]])
    hidden = transform(b, A)
    print("bracket in scrambled coordinates:")
    print(format_bracket(hidden))

    linear, triple = jacobi_residual(hidden)
    print("Jacobi residuals vanish:", not linear and not triple)

    report = classify(hidden)
    print("case:", report.case_label, " spectrum:", report.spectrum)

    rels = relations(b)
    rules = triangularize(rels)
    print("\nrewriting rules:")
    print(rules)
    print("diamond residual on x3x2x1:", diamond_residual(rules) or 0)
    print("graded dimensions (generic, h = 0):", [graded_dimension(rels, d) for d in range(2, 6)])
    print("splitting at degree 4:", splitting_check(rels, 4))
    print("W:", intersection_W(rels).as_tuple())


if __name__ == "__main__":
    main()
