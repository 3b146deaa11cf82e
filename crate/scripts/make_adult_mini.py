"""Build data/adult_mini.csv from the UCI Adult training file (adult.data).

Draws a seeded stratified sample of 350 male and 150 female records, keeps the
six numeric attributes, z-scores each column, and writes them as f0..f5 with the
gender label in the `color` column.

usage: python3 scripts/make_adult_mini.py path/to/adult.data data/adult_mini.csv
"""
import sys

import numpy as np
import pandas as pd

NUMERIC = [0, 2, 4, 10, 11, 12]  # age, fnlwgt, education-num, capital-gain, capital-loss, hours-per-week
SEX = 9
COUNTS = {"Male": 350, "Female": 150}
SEED = 20230611


def main(src, dst):
    raw = pd.read_csv(src, header=None, skipinitialspace=True)
    rng = np.random.default_rng(SEED)
    parts = []
    for label, count in COUNTS.items():
        pool = raw[raw[SEX] == label]
        parts.append(pool.iloc[np.sort(rng.choice(len(pool), size=count, replace=False))])
    sample = pd.concat(parts).sort_index()
    feats = sample[NUMERIC].astype(float)
    feats = (feats - feats.mean()) / feats.std(ddof=0)
    out = pd.DataFrame({f"f{i}": feats[c].round(6) for i, c in enumerate(NUMERIC)})
    out["color"] = sample[SEX].values
    out.to_csv(dst, index=False)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
