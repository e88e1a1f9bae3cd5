"""Sanity check: can the small network memorise 200 pairs?

Builds a toy corpus of 16x16 tiles (unaltered vs median-filtered), trains the
reduced network for 2,000 iterations with the default Nadam settings, and
plots the curve.  Training accuracy should reach 100% in well under a minute
on a laptop CPU; if it does not, something in the loss, the gradients or
the optimiser is broken.

    python demos/overfit_tiny.py --out overfit
"""
import argparse
import logging
from pathlib import Path

import numpy as np

from siamforensics import cli
from siamforensics import dataset as ds
from siamforensics import trainer as tr
from siamforensics.manip_ops import ManipulationKind as K, default_specs
from siamforensics.siamese_net import ArchConfig, pair_probabilities
from siamforensics.synthetic import synthetic_sources

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--out", type=Path, default=Path("overfit"))
parser.add_argument("--iterations", type=int, default=2000)
args = parser.parse_args()
logging.basicConfig(level=logging.INFO, format="%(message)s")

classes = [K.ORIGINAL, K.MEDIAN_FILTER]
sources = [ds.ingest(s) for s in synthetic_sources(4, 64, 80, seed=1)]
corpus = ds.build_corpus(sources, default_specs(classes), 0, args.out / "corpus", patch_size=16)
pairs = ds.sample_pairs(corpus, classes, 100, 100, None, seed=0)

config = tr.TrainConfig(max_iterations=args.iterations, eval_every=100, patience=0)
result = tr.train(config, pairs, pairs, corpus, args.out / "run", ArchConfig.tiny())

p = pair_probabilities(result.state.model, tr.resolve_patches(corpus, pairs), pairs)
y = np.array([q.label for q in pairs])
print(f"training accuracy {np.mean((p >= 0.5) == (y == 1)):.3f}")
print(f"mean p: IP pairs {p[y == 1].mean():.3f}, DP pairs {p[y == 0].mean():.3f}")
cli.main(["report", "--curve", str(args.out / "run" / "curve.csv"), "--out", str(args.out / "curve.png")])
