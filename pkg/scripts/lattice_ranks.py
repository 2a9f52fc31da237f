"""Reduced rank and socle rank over the corpus plus a sweep of divisor lattices."""
import argparse
from dataclasses import dataclass

from inflatorkit import lattice as LT


@dataclass
class Config:
    divisors: tuple = (12, 24, 36, 72, 90, 120)


def main(cfg: Config):
    print(f"{'lattice':<12}{'N':>5}{'modular':>9}{'rk0':>5}{'rk_bot':>8}  conditions")
    rows = list(LT.corpus().items())
    rows += [(f"Div({n})", LT.divisor_lattice(n)) for n in cfg.divisors]
    for name, M in rows:
        ok, _ = LT.is_modular(M)
        if not ok:
            print(f"{name:<12}{M.n:>5}{'no':>9}")
            continue
        c = LT.cube_conditions_agree(M)
        print(f"{name:<12}{M.n:>5}{'yes':>9}{LT.rk0(M):>5}{LT.rk_bot(M):>8}  {list(c)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--divisors", type=int, nargs="+", default=list(Config.divisors))
    main(Config(tuple(ap.parse_args().divisors)))
