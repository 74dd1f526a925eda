"""Golden CLI invocations shared by the CLI tests and the regeneration script."""

from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"

CASES = {
    "triple_majorize.json": ["majorize", "--file", "{fx}/triple.json"],
    "triple_mlocc.json": ["mlocc", "--file", "{fx}/triple.json", "--n-max", "6"],
    "triple_approximate.json": ["approximate", "--file", "{fx}/triple.json"],
    "triple_conjecture.json": ["conjecture", "--file", "{fx}/triple.json"],
    "triple_ldp.csv": ["ldp", "--x", "[0.39666666666666667, 0.39666666666666667, 0.19666666666666667]",
                        "--y", "[0.5, 0.25, 0.25]", "--n", "2", "--n", "4"],
    "quad_mlocc.json": ["mlocc", "--file", "{fx}/quad.json"],
    "quad_catalyst_verify.json": ["catalyst", "--file", "{fx}/quad.json"],
    "quad_catalyst_build.json": ["catalyst", "--x", "[0.4,0.4,0.1,0.1]",
                               "--y", "[0.5,0.25,0.25,0]", "--n", "3"],
    "quad_majorize_exact.json": ["majorize", "--file", "{fx}/quad.json", "--mode", "exact"],
}

# expected exit codes
EXITS = {
    "triple_majorize.json": 1, "triple_mlocc.json": 1, "triple_approximate.json": 0,
    "triple_conjecture.json": 1, "triple_ldp.csv": 0, "quad_mlocc.json": 0,
    "quad_catalyst_verify.json": 0, "quad_catalyst_build.json": 0, "quad_majorize_exact.json": 1,
}


def argv(name: str, threads: int = 1) -> list[str]:
    args = [a.replace("{fx}", str(FIXTURES)) for a in CASES[name]]
    return args + ["--threads", str(threads)]


if __name__ == "__main__":
    import io

    from trumpkit.cli import run

    for name in CASES:
        buf = io.StringIO()
        code = run(argv(name), buf)
        (GOLDEN / name).write_bytes(buf.getvalue().encode())
        print(f"{name}: exit {code}")
