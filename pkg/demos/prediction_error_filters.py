"""What the constrained first layer sees.

Each filter predicts the centre pixel from its 24 neighbours and subtracts
the actual value, so smooth content cancels and what survives is the local
prediction error.  Manipulations change that residual in characteristic ways:
blurring and median filtering shrink it, resampling makes it periodic,
noise inflates it.  This script prints residual energy per manipulation for
one synthetic tile, using a freshly initialised bank (no training needed).

    python demos/prediction_error_filters.py
"""
import numpy as np

from siamforensics import constrained_conv as cc
from siamforensics import manip_ops as mo
from siamforensics.dataset import extract_patches, ingest, SourceImage
from siamforensics.synthetic import synthetic_scene

bank = cc.init_bank(seed=0)
print("filter 0 after projection:")
print(np.array2string(bank[0].numpy(), precision=3, suppress_small=True))
centre, offsum = cc.constraint_violation(bank)
print(f"centre deviation {centre:.1e}, off-centre sum deviation {offsum:.1e}\n")

flat = np.full((150, 150), 117.0)
print("response to a constant tile:", float(np.abs(cc.forward(flat, bank)).max()))

image = ingest(SourceImage("demo", synthetic_scene(300, 300, seed=7)))
tile = extract_patches(image, 150)[0][1]
print(f"\n{'manipulation':15s} {'residual RMS':>12s}  {'vs original':>11s}")
base = None
for spec in mo.default_specs():
    out = mo.apply(spec.with_seed(11) if spec.kind is mo.ManipulationKind.AWGN else spec, tile)
    rms = float(np.sqrt(np.mean(cc.forward(out.astype(np.float64), bank) ** 2)))
    base = base or rms
    print(f"{spec.kind.value:15s} {rms:12.3f}  {rms / base:11.2f}")
