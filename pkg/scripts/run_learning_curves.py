#!/usr/bin/env python3
"""Run all six gate learning-curve experiments (slp and mlp on OR/AND/XOR).

Protocol defaults: 1000 epochs, 100-sample dataset, 100 realizations of
the starting weights, learning rate 0.1 (0.01 for the mlp on XOR).
Writes curve_<model>_<gate>.csv into --out.
"""

import argparse
import time

from memperceptron.harness import parse_config, run_learning_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--realizations", type=int, default=100)
    ap.add_argument("--epochs", type=int, default=1000)
    ap.add_argument("--svg", action="store_true", help="write .svg plots too")
    args = ap.parse_args()

    for model in ("slp", "mlp"):
        for gate in ("OR", "AND", "XOR"):
            config = parse_config(overrides={
                "model": model, "gate": gate, "seed": args.seed,
                "epochs": args.epochs, "n_realizations": args.realizations,
                "out_dir": args.out, "svg": args.svg,
            })
            t0 = time.time()
            path, records = run_learning_experiment(config)
            print(f"{model} {gate}: epoch-1 mean {records[0].mean_e_total:.3f}, "
                  f"final mean {records[-1].mean_e_total:.5f} "
                  f"-> {path} ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
