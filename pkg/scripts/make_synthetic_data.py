"""Regenerate the synthetic stand-in datasets shipped in src/depcorr/data.

The original fish/seabird and birth/death data are not redistributed here.
These files only mimic their size and rough shape so the examples and
tests have something to run on.
"""
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "depcorr" / "data"


def fish_seabirds(rng):
    seabirds = np.round(rng.lognormal(mean=5.5, sigma=1.4, size=12))
    fish = np.round(40 + 2.5 * np.log1p(seabirds) + rng.gamma(1.5, 9.0, size=12), 1)
    return {"fish": fish, "seabirds": seabirds}


def births_deaths(rng):
    birth = np.round(np.clip(rng.gamma(5.0, 4.4, size=229), 6.5, 46.0), 1)
    death = 5.0 + 0.018 * (birth - 24.0) ** 2 - 0.03 * (birth - 24.0) + rng.gamma(2.0, 1.2, size=229)
    return {"birth": birth, "death": np.round(death, 1)}


def write(path, cols):
    names = list(cols)
    with open(path, "w") as fh:
        fh.write(",".join(names) + "\n")
        for row in zip(*cols.values()):
            fh.write(",".join(f"{v:g}" for v in row) + "\n")


if __name__ == "__main__":
    write(OUT / "fish_seabirds_synthetic.csv", fish_seabirds(np.random.default_rng(20220412)))
    write(OUT / "births_deaths_synthetic.csv", births_deaths(np.random.default_rng(2020)))
