#!/usr/bin/env python3
"""Rebuild the ten benchmark files under data/ from PyPI wheels.

The UCI repository is not always reachable from build machines, so the
files are reconstructed from wheels that bundle the same tables:

  mafese 1.0.0           iris, seeds, statlog heart, ionosphere, banknote,
                         breast cancer (wdbc), wine, sonar
  keel-ds 0.2.5          haberman
  palmerpenguins 0.1.6   penguins

Each file is rewritten in the layout of the corresponding UCI export
(label encoding, delimiter, column order) so the manifests in
crates/core/manifests.toml describe the public file formats. The wdbc
export written here has no id column because none of the bundled copies
carry it.

Usage: python3 scripts/fetch_datasets.py [--out data] [--wheel-dir DIR]
"""

import argparse
import csv
import io
import pathlib
import subprocess
import tempfile
import zipfile

WHEELS = {
    "mafese": "mafese==1.0.0",
    "keel": "keel-ds==0.2.5",
    "penguins": "palmerpenguins==0.1.6",
}


def fetch_wheels(wheel_dir: pathlib.Path) -> dict:
    found = {}
    for key, req in WHEELS.items():
        name = req.split("==")[0].replace("-", "_")
        hits = sorted(wheel_dir.glob(f"{name}-*.whl"))
        if not hits:
            subprocess.run(
                ["pip", "download", "--no-deps", "--timeout", "300", "-d", str(wheel_dir), req],
                check=True,
            )
            hits = sorted(wheel_dir.glob(f"{name}-*.whl"))
        found[key] = zipfile.ZipFile(hits[-1])
    return found


def rows(zf: zipfile.ZipFile, member: str, sep: str = ","):
    text = zf.read(member).decode("utf-8")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("@"):
            continue
        out.append([c.strip() for c in line.split(sep)])
    return out


def write(path: pathlib.Path, records, sep=","):
    with open(path, "w", newline="") as fh:
        for rec in records:
            fh.write(sep.join(rec) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data")
    ap.add_argument("--wheel-dir", default=None)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    with tempfile.TemporaryDirectory() as tmp:
        wheel_dir = pathlib.Path(args.wheel_dir or tmp)
        z = fetch_wheels(wheel_dir)
        cls = "mafese/data/cls/"

        iris_names = {"0": "Iris-setosa", "1": "Iris-versicolor", "2": "Iris-virginica"}
        write(out / "iris.data",
              [r[:-1] + [iris_names[r[-1]]] for r in rows(z["mafese"], cls + "Iris.csv")])

        # KEEL: negative = survived 5 years or longer (UCI status 1)
        status = {"negative": "1", "positive": "2"}
        write(out / "haberman.data",
              [r[:-1] + [status[r[-1]]] for r in rows(z["keel"], "keel_ds/data/imbalanced/raw/haberman.dat")])

        # mafese seeds: 1 Kama, 2 Rosa, 0 Canadian
        seeds = {"1": "1", "2": "2", "0": "3"}
        write(out / "seeds_dataset.txt",
              [r[:-1] + [seeds[r[-1]]] for r in rows(z["mafese"], cls + "seeds.csv")], sep="\t")

        # mafese heart: 1 absence, 0 presence; UCI uses 1 / 2
        heart = {"1": "1", "0": "2"}
        write(out / "heart.dat",
              [r[:-1] + [heart[r[-1]]] for r in rows(z["mafese"], cls + "heart.csv")], sep=" ")

        iono = {"1": "g", "2": "b"}
        write(out / "ionosphere.data",
              [r[:-1] + [iono[r[-1]]] for r in rows(z["mafese"], cls + "Ionosphere.csv")])

        write(out / "data_banknote_authentication.txt", rows(z["mafese"], cls + "banknote.csv"))

        diag = {"0": "M", "1": "B"}
        write(out / "wdbc.data",
              [[diag[r[-1]]] + r[:-1] for r in rows(z["mafese"], cls + "wdbc.csv")])

        write(out / "wine.data",
              [[r[-1]] + r[:-1] for r in rows(z["mafese"], cls + "Wine.csv")])

        sonar = {"2": "M", "1": "R"}
        write(out / "sonar.all-data",
              [r[:-1] + [sonar[r[-1]]] for r in rows(z["mafese"], cls + "Sonar.csv")])

        (out / "penguins.csv").write_bytes(z["penguins"].read("palmerpenguins/data/penguins.csv"))

    print(f"wrote 10 files to {out}")


if __name__ == "__main__":
    main()
