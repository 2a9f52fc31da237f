"""How often is a random element wild for an inflator, and does one
taming mutation fix it?  Prints a small table and writes JSON.
"""
import argparse
import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

from inflatorkit import fields as F
from inflatorkit.errors import DegenerateProbe
from inflatorkit.fundamental import classify_tame
from inflatorkit.inflators import builtin
from inflatorkit.mutation import taming_report


@dataclass
class Config:
    inflator: str = "gerald"
    samples: int = 60
    seed: int = 0
    complexity: int = 2
    out: str = "results/taming_survey.json"


def main(cfg: Config):
    f = builtin(cfg.inflator)
    rng = random.Random(cfg.seed)
    qs = list(range(f.degree + 1))
    counts = {"tame": 0, "wild": 0, "tamed": 0, "skipped": 0}
    wild = []
    for _ in range(cfg.samples):
        a = F.random_element(f.source_field, rng, cfg.complexity)
        try:
            tr = classify_tame(f, a, qs)
        except DegenerateProbe:
            counts["skipped"] += 1
            continue
        if tr.tame:
            counts["tame"] += 1
            continue
        counts["wild"] += 1
        rep = taming_report(f, a, qs)
        counts["tamed"] += rep.passed
        wild.append({"element": F.format_element(a), "tamed": rep.passed,
                     "certificates": sum(c.name.startswith("certificate") for c in rep.checks)})
    print(f"{cfg.inflator}: {counts}")
    for w in wild[:10]:
        print(f"  wild {w['element']:<30} tamed={w['tamed']} certificates={w['certificates']}")
    path = Path(cfg.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"config": asdict(cfg), "counts": counts, "wild": wild}, indent=2))
    return counts["wild"] == counts["tamed"]


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    for k, v in asdict(Config()).items():
        ap.add_argument("--" + k, type=type(v), default=v)
    raise SystemExit(0 if main(Config(**vars(ap.parse_args()))) else 1)
