"""Run the acceptance blocks for a few seeds and write a JSON summary.

    python3 scripts/run_acceptance.py --seeds 0 1 2 --out results/acceptance.json
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from inflatorkit import suites


@dataclass
class Config:
    seeds: list = field(default_factory=lambda: [0])
    criteria: list = field(default_factory=lambda: sorted(suites.CRITERIA))
    out: str = "results/acceptance.json"


def main(cfg: Config):
    rows = []
    for seed in cfg.seeds:
        for k in cfg.criteria:
            t0 = time.perf_counter()
            rep = suites.run_criterion(k, seed=seed)
            dt = time.perf_counter() - t0
            rows.append({"seed": seed, "criterion": k, "name": rep.name, "passed": rep.passed,
                         "checks": len(rep.checks), "seconds": round(dt, 2),
                         "failed": [c.name for c in rep.failures]})
            print(f"seed {seed:>3}  {'PASS' if rep.passed else 'FAIL'}  {rep.name}  ({dt:.1f}s)")
    path = Path(cfg.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"config": asdict(cfg), "runs": rows}, indent=2))
    return all(r["passed"] for r in rows)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--criteria", type=int, nargs="+", default=None)
    ap.add_argument("--out", default=Config.out)
    a = ap.parse_args()
    cfg = Config(seeds=a.seeds, out=a.out)
    if a.criteria:
        cfg.criteria = a.criteria
    raise SystemExit(0 if main(cfg) else 1)
