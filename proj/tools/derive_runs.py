#!/usr/bin/env python3
"""Write published energies in the energies CSV schema for `qdft report`.

Default: back-solve E_qdft = E_dft + R/100 * (E_ccsd - E_dft) from the
published recovery table. With --best: one row per molecule from the
published best-active-space energies in reference_energies.csv.
"""
import csv
import sys
from pathlib import Path


def rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(line for line in f if not line.startswith("#")))


def main(data_dir, out, best=False):
    refs = {r["molecule"]: r for r in rows(Path(data_dir) / "reference_energies.csv")}
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["molecule", "mu", "ne", "no", "e_hf", "e_qdft", "iterations", "converged"])
    if best:
        for ref in refs.values():
            w.writerow([ref["molecule"], "", ref["qdft_ne"], ref["qdft_no"], ref["e_hf"], ref["e_qdft"], 0, 1])
        return
    for r in rows(Path(data_dir) / "published_recovery.csv"):
        ref = refs[r["molecule"]]
        e_dft, e_ccsd = float(ref["e_dft"]), float(ref["e_ccsd"])
        e_qdft = e_dft + float(r["recovery_percent"]) / 100.0 * (e_ccsd - e_dft)
        w.writerow([r["molecule"], r["mu_opt"], r["ne"], r["no"], ref["e_hf"], "%.10f" % e_qdft, 0, 1])


if __name__ == "__main__":
    args = [a for a in sys.argv[1:] if a != "--best"]
    data = args[0] if args else Path(__file__).resolve().parent.parent / "data"
    main(data, sys.stdout, best="--best" in sys.argv)
