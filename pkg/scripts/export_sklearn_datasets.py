"""Write the iris, wine and wdbc tables bundled with scikit-learn as benchmark CSVs.

Usage: python scripts/export_sklearn_datasets.py data/uci
"""

import sys
from pathlib import Path

from sklearn.datasets import load_breast_cancer, load_iris, load_wine

from viewmetric.data import Dataset, save_csv

LOADERS = {"iris": load_iris, "wine": load_wine, "wdbc": load_breast_cancer}


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, loader in LOADERS.items():
        bunch = loader()
        names = [n.replace(" ", "_").replace("(", "").replace(")", "") for n in bunch.feature_names]
        ds = Dataset(bunch.data, labels=bunch.target, feature_names=names, name=name)
        save_csv(ds, out / f"{name}.csv")
        print(f"wrote {out / (name + '.csv')} ({ds.n} x {ds.m})")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/uci")
