"""Run the main verifiers over a grid of (family, n, order) and save JSON reports.

    python scripts/run_grid.py --out results/grid.json
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field

from superdenom.identities import check_support_isotropy, extract_Y_report, verify_affine_identity


@dataclass
class GridConfig:
    cases: list = field(
        default_factory=lambda: [("gl", 1, 20), ("gl", 2, 16), ("gl", 3, 12), ("d", 1, 12), ("d21a", 1, 12), ("d", 2, 10)]
    )
    threads: int = 1
    checks: tuple = ("verify", "y-extract", "isotropy")


CHECKS = {"verify": verify_affine_identity, "y-extract": extract_Y_report, "isotropy": check_support_isotropy}


def run(cfg: GridConfig) -> list[dict]:
    rows = []
    for family, n, order in cfg.cases:
        for name in cfg.checks:
            rep = CHECKS[name](family, n, order, cfg.threads)
            d = rep.to_dict()
            rows.append(d)
            print(f"{name:10s} {family:5s} n={n} N={order:3d}  {d['verdict']:4s}  {d['elapsed_ms']:10.1f} ms")
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default=None)
    a = ap.parse_args()
    cfg = GridConfig(threads=a.threads)
    rows = run(cfg)
    if a.out:
        with open(a.out, "w") as fh:
            json.dump({"config": asdict(cfg), "reports": rows}, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
