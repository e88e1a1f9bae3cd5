"""Spot a pasted region with a pairwise consistency map.

A synthetic scene is tiled into 150x150 patches; the right-hand third is
replaced by a median-filtered copy of itself, imitating a splice from an
image with a different processing history.  Every pair of patches is scored
by a trained network; patches from the pasted region should agree with each
other (IP) and disagree with the rest (DP), which shows up as a block
structure in the heatmap.

Needs a checkpoint of the full-size network, e.g. the one written by
``demos/desk_scale_replication.py``:

    python demos/splice_consistency.py --checkpoint runs/desk/run/best.ckpt --out splice.png
"""
import argparse
from pathlib import Path

import numpy as np

from siamforensics import evaluator as ev
from siamforensics import manip_ops as mo
from siamforensics import trainer as tr
from siamforensics.dataset import SourceImage, ingest
from siamforensics.synthetic import synthetic_scene

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--checkpoint", type=Path, required=True)
parser.add_argument("--out", type=Path, default=Path("splice_consistency.png"))
parser.add_argument("--seed", type=int, default=4242)
args = parser.parse_args()

image = ingest(SourceImage("splice", synthetic_scene(450, 900, seed=args.seed)))
pixels = image.pixels.copy()
pixels[:, 600:] = mo.median_filter(pixels[:, 600:], 5)
spliced = SourceImage("splice", pixels)

model, _ = tr.load_model(args.checkpoint)
cmap = ev.consistency_map(spliced, model)
cmap.write(args.out.with_suffix(".json"), heatmap=args.out)

rows, cols = cmap.grid
pasted = np.array([c >= 600 for _, c in cmap.origins])
m = cmap.matrix
off = ~np.eye(len(m), dtype=bool)
same = off & (pasted[:, None] == pasted[None, :])
print(f"{rows}x{cols} patches, {pasted.sum()} in the pasted region")
print(f"mean p within a region : {m[same].mean():.3f}")
print(f"mean p across regions  : {m[off & ~same].mean():.3f}")
votes = (m[:, ~pasted] < 0.5).mean(axis=1)
print("share of DP verdicts against the untouched area, per patch:")
print(np.array2string(votes.reshape(rows, cols), precision=2))
print(f"heatmap written to {args.out}")
