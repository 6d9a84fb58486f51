"""Print a few explicit operator realizations and check them.

Each triple of operators should satisfy the quantized relations exactly
and generate something as large as a polynomial ring in low degree.
"""

from quadpoisson.realize import catalog, format_operator, independence, solve_case10, verify


def show(name: str, **params) -> None:
    R = catalog(name, **params)
    print(f"== {name} {params or ''}")
    for i, x in enumerate(R.triple, 1):
        print(f"  x{i} = {format_operator(x)}")
    residuals = verify(R)
    print("  residuals zero:", all(r.is_zero() for r in residuals))
    print("  independent to degree 3:", independence(R, 3))


def main() -> None:
    show("orbit5")
    show("orbit7")
    show("rank2-second", c1=1, c2=1)
    show("rank3-quantum", k1="k1", k2="k2", k3="k3")

    sol = solve_case10(1, 0, 3)
    print("== orbit10 series to degree 3")
    print("  u =", sol.u_value.as_expr())
    print("  residuals zero:", sol.ok())


if __name__ == "__main__":
    main()
