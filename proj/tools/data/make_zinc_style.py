#!/usr/bin/env python3
#
# Project aisens - Copyright 2026 The aisens Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Builds the ZINC-style corpus bundled under data/.

Molecules come from the ZINC15 subset distributed with the MOSES benchmark
(`pip download molsets`). MOSES strips charges and stereochemistry, so each
molecule is brought back to a ZINC-like representation:

  * protonation states at pH 7.0 via dimorphite_dl,
  * one stereoisomer drawn uniformly (seeded) for unassigned stereo elements,
  * RDKit canonical isomeric SMILES with aromatic lowercase atoms.

Labels are computed with RDKit the same way the ZINC250k labels were made:
QED (rdkit.Chem.QED.qed), logP (Crippen MolLogP) and MolWt (Descriptors.MolWt).

Usage:
  pip download molsets --no-deps -d /tmp/pk
  pip install rdkit dimorphite_dl
  python3 tools/data/make_zinc_style.py /tmp/pk/molsets-0.3.1-py3-none-any.whl \
      data/zinc_style_60k.csv --n 60000 --seed 20240601
"""

import argparse
import csv
import gzip
import io
import random
import sys
import zipfile

from dimorphite_dl import protonate_smiles
from rdkit import Chem, RDLogger
from rdkit.Chem import QED, Crippen, Descriptors
from rdkit.Chem.EnumerateStereoisomers import (EnumerateStereoisomers,
                                               StereoEnumerationOptions)


def read_moses(wheel):
    with zipfile.ZipFile(wheel) as z:
        raw = z.read("moses/dataset/data/train.csv.gz")
    text = gzip.decompress(raw).decode()
    rows = list(csv.reader(io.StringIO(text)))
    return [r[0] for r in rows[1:] if r]


def zinc_style(smiles, rng):
    states = protonate_smiles(smiles, ph_min=7.0, ph_max=7.0, precision=0.0,
                              max_variants=1)
    mol = Chem.MolFromSmiles(states[0] if states else smiles)
    if mol is None:
        return None
    opts = StereoEnumerationOptions(onlyUnassigned=True, unique=True,
                                    maxIsomers=32, tryEmbedding=False)
    isomers = list(EnumerateStereoisomers(mol, options=opts))
    if isomers:
        mol = isomers[rng.randrange(len(isomers))]
    out = Chem.MolToSmiles(mol)
    mol = Chem.MolFromSmiles(out)
    if mol is None:
        return None
    return out, QED.qed(mol), Crippen.MolLogP(mol), Descriptors.MolWt(mol)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("moses_wheel")
    ap.add_argument("output")
    ap.add_argument("--n", type=int, default=60000)
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args()

    RDLogger.DisableLog("rdApp.*")
    rng = random.Random(args.seed)
    pool = read_moses(args.moses_wheel)
    picked = rng.sample(range(len(pool)), args.n)

    with open(args.output, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["smiles", "qed", "logP", "MolWt"])
        for k, i in enumerate(picked):
            res = zinc_style(pool[i], rng)
            if res is None:
                continue
            smi, qed, logp, mw = res
            w.writerow([smi, f"{qed:.6f}", f"{logp:.5f}", f"{mw:.3f}"])
            if k % 5000 == 0:
                print(f"{k}/{args.n}", file=sys.stderr)


if __name__ == "__main__":
    main()
