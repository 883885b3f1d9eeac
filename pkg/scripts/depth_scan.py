"""How far can the affine identity be pushed?  Increase the order until a time budget is hit.

    python scripts/depth_scan.py --family d --n 2 --budget 30
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from superdenom.identities import verify_affine_identity
from superdenom.identities import resolve_family


@dataclass
class ScanConfig:
    family: str = "gl"
    n: int = 2
    start: int = 4
    step: int = 2
    budget: float = 30.0  # seconds per single run
    threads: int = 1


def scan(cfg: ScanConfig) -> list[tuple[int, str, float, int]]:
    rs = resolve_family(cfg.family, cfg.n)
    out = []
    order = cfg.start
    while True:
        rep = verify_affine_identity(cfg.family, cfg.n, order, cfg.threads)
        out.append((order, rep.verdict, rep.elapsed, rep.lhs_terms))
        print(f"N={order:3d} (q-depth {order // rs.delta_height})  {rep.verdict}  {rep.elapsed:8.2f} s  {rep.lhs_terms} terms")
        if rep.verdict != "pass" or rep.elapsed > cfg.budget:
            return out
        order += cfg.step


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in ScanConfig.__dataclass_fields__.values():
        ap.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    scan(ScanConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
