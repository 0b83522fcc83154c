"""Regenerate the checked-in fixture files (deterministic).

Run from the repository root:  python3 fixtures/generate.py
"""

import pathlib

from masscut import (
    Arrangement,
    Hyperplane,
    InstanceFile,
    gen_grid,
    gen_symmetric,
    write_cuts,
    write_instance,
)

HERE = pathlib.Path(__file__).parent


def main():
    sym = gen_symmetric(2, 400, 3)
    write_instance(
        HERE / "symmetric_d2_n400_seed3.json",
        InstanceFile(
            dim=2,
            masses=[sym],
            metadata={"generator": "symmetric", "seed": 3, "parameters": {"d": 2, "n": 400}},
        ),
    )
    grid = gen_grid(1, 10, 1)
    write_instance(
        HERE / "grid_d1_side10.json",
        InstanceFile(
            dim=1,
            masses=grid,
            metadata={"generator": "grid", "seed": None, "parameters": {"d": 1, "side": 10, "m": 1}},
        ),
    )
    axes = Arrangement((Hyperplane([1.0, 0.0], 0.0), Hyperplane([0.0, 1.0], 0.0)))
    write_cuts(HERE / "axes_d2.cuts.json", axes)
    print("fixtures written to", HERE)


if __name__ == "__main__":
    main()
