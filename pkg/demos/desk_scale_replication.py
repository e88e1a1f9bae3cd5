"""Desk-scale replication run.

Synthesises a corpus large enough for 2,000 / 250 / 500 patches per class,
trains the full-size Siamese network on ORIGINAL, GAUSSIAN_BLUR,
MEDIAN_FILTER and RESAMPLE with 20k IP + 20k DP pairs for up to 5,000
iterations, then scores

  * a mixed four-class test set,
  * the class-conditional protocol for each trained class,
  * AWGN and gamma correction as unseen manipulations,
  * a consistency map of one held-out unaltered image.

Everything heavy lives under ``--work`` (corpus PNGs, checkpoints).  The
small outputs the acceptance suite reads (reports, curve, constraint log,
split summary) are copied to ``--artifacts``.  Every stage is skipped when its
output already exists, and training resumes from ``resume.ckpt``, so the
script can be interrupted and rerun.

On a single CPU core an iteration takes roughly 4 s; budget about six hours.

    python demos/desk_scale_replication.py --work runs/desk --artifacts artifacts/desk
"""
import argparse
import json
import logging
import shutil
import time
from pathlib import Path

import numpy as np

from siamforensics import dataset as ds
from siamforensics import trainer as tr
from siamforensics.manip_ops import ManipulationKind as K, default_specs
from siamforensics.siamese_net import ArchConfig
from siamforensics.synthetic import synthetic_scene, synthetic_sources

TRAINED = [K.ORIGINAL, K.GAUSSIAN_BLUR, K.MEDIAN_FILTER, K.RESAMPLE]
UNSEEN = [K.AWGN, K.GAMMA]
log = logging.getLogger("desk")


def build_corpus(work: Path, n_images: int, seed: int) -> ds.Manifest:
    manifest_path = work / "corpus" / "manifest.jsonl"
    if manifest_path.is_file():
        log.info("corpus exists, reusing %s", manifest_path)
        return ds.Manifest.read(manifest_path)
    t = time.time()
    sources = [ds.ingest(s) for s in synthetic_sources(n_images, 600, 900, seed=seed)]
    manifest = ds.build_corpus(sources, default_specs(), corpus_seed=seed, out_dir=work / "corpus")
    log.info("built %d patches in %.0fs", len(manifest.records), time.time() - t)
    return manifest


def make_pairs(work: Path, manifest: ds.Manifest, args) -> dict:
    pair_dir = work / "pairs"
    if (pair_dir / "split.json").is_file():
        plan = ds.SplitPlan.read(pair_dir / "split.json")
        return {"plan": plan} | {name: ds.read_pairs(pair_dir / f"{name}.jsonl")
                                 for name in ("train", "val", "test")}
    pair_dir.mkdir(parents=True, exist_ok=True)
    plan = ds.make_splits(manifest, 2000, 250, 500, seed=args.seed)
    out = {
        "train": ds.sample_pairs(manifest, TRAINED, args.pairs, args.pairs, plan.pool("train"), seed=args.seed + 1),
        "val": ds.sample_pairs(manifest, TRAINED, 1000, 1000, plan.pool("val"), seed=args.seed + 2),
        "test": ds.sample_pairs(manifest, TRAINED, 5000, 5000, plan.pool("test"), seed=args.seed + 3),
    }
    plan.pair_counts.update({k: len(v) for k, v in out.items()})
    plan.write(pair_dir / "split.json")
    for name, pairs in out.items():
        ds.write_pairs(pairs, pair_dir / f"{name}.jsonl")
    return {"plan": plan} | out


def run_training(work: Path, manifest, pairs, args) -> Path:
    run_dir = work / "run"
    if (run_dir / "final.ckpt").is_file():
        log.info("training finished earlier, reusing %s", run_dir)
        return run_dir
    config = tr.TrainConfig(max_iterations=args.iterations, eval_every=args.eval_every,
                            checkpoint_every=args.eval_every, seed=args.seed)
    state = None
    if (run_dir / "resume.ckpt").is_file():
        state = tr.load_checkpoint(run_dir / "resume.ckpt", ArchConfig.full())
        log.info("resuming at iteration %d", state.iteration)
    tr.train(config, pairs["train"], pairs["val"], manifest, run_dir, ArchConfig.full(), state=state)
    return run_dir


def run_evaluation(work: Path, manifest, pairs, run_dir: Path, artifacts: Path, args) -> dict:
    from siamforensics import evaluator as ev

    checkpoint = run_dir / "best.ckpt"
    model, meta = tr.load_model(checkpoint, ArchConfig.full())
    test_pool = pairs["plan"].pool("test")
    reports = {"checkpoint_iteration": tr.read_checkpoint_metadata(checkpoint)["iteration"],
               "trained_classes": meta["trained_classes"]}
    reports["mixed"] = ev.evaluate(model, pairs["test"], manifest=manifest).to_dict()
    reports["per_class"] = {}
    for target in TRAINED:
        others = [k for k in TRAINED if k != target]
        rep = ev.per_class_eval(model, manifest, target, others, (2500, 2500), seed=args.seed + 10,
                                patch_pool=test_pool)
        reports["per_class"][target.value] = rep.to_dict()
    reports["generalization"] = {}
    for unseen in UNSEEN:
        rep = ev.generalization_eval(model, manifest, unseen, TRAINED, (2500, 2500), seed=args.seed + 20,
                                     patch_pool=test_pool, trained_classes=meta["trained_classes"])
        reports["generalization"][unseen.value] = rep.to_dict()

    held_out = ds.ingest(ds.SourceImage("heldout_unaltered", synthetic_scene(600, 900, seed=args.seed + 999)))
    cmap = ev.consistency_map(held_out, model)
    cmap.write(artifacts / "consistency_map.json", heatmap=artifacts / "consistency_map.png")
    off = cmap.matrix[~np.eye(len(cmap.matrix), dtype=bool)]
    reports["consistency_map"] = {"grid": list(cmap.grid), "min_offdiag": float(off.min()),
                                  "mean_offdiag": float(off.mean()),
                                  "fraction_ip": float(np.mean(off >= 0.5))}
    return reports


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--work", type=Path, default=Path("runs/desk"))
    parser.add_argument("--artifacts", type=Path, default=Path("artifacts/desk"))
    parser.add_argument("--images", type=int, default=115, help="600x900 synthetic images (24 crops each)")
    parser.add_argument("--pairs", type=int, default=20_000, help="IP and DP training pairs, each")
    parser.add_argument("--iterations", type=int, default=5000)
    parser.add_argument("--eval-every", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--stage", choices=["train", "all"], default="all")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")

    args.artifacts.mkdir(parents=True, exist_ok=True)
    manifest = build_corpus(args.work, args.images, args.seed)
    pairs = make_pairs(args.work, manifest, args)
    shutil.copy(args.work / "pairs" / "split.json", args.artifacts / "split.json")
    run_dir = run_training(args.work, manifest, pairs, args)
    for name in ("curve.csv", "constraints.csv", "train_config.txt"):
        shutil.copy(run_dir / name, args.artifacts / name)
    if args.stage == "train":
        return
    reports = run_evaluation(args.work, manifest, pairs, run_dir, args.artifacts, args)
    (args.artifacts / "reports.json").write_text(json.dumps(reports, indent=2, sort_keys=True) + "\n")
    log.info("mixed accuracy %.4f", reports["mixed"]["accuracy"])
    for k, r in reports["per_class"].items():
        log.info("per-class %-14s %.4f", k, r["accuracy"])
    for k, r in reports["generalization"].items():
        log.info("unseen    %-14s %.4f", k, r["accuracy"])


if __name__ == "__main__":
    main()
