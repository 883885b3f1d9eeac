"""Extract Y for D(n+1|n) deep enough to read q^0..q^K and compare with partition counts.

    python scripts/partition_table.py --n 1 --k 6
"""
from __future__ import annotations

import argparse

from superdenom.identities import extract_Y, partition_numbers
from superdenom.lattice import build_root_system
from superdenom.series import q_coefficients


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    a = ap.parse_args()
    rs = build_root_system("d", a.n)
    order = a.k * rs.delta_height  # height truncation reaches q^k at k * height(delta)
    got = q_coefficients(extract_Y("d", a.n, order, a.threads))[: a.k + 1]
    want = partition_numbers(a.k)
    for k, (x, y) in enumerate(zip(got, want)):
        print(f"q^{k}: Y={x:6d}  p(k)={y:6d}  {'ok' if x == y else 'MISMATCH'}")


if __name__ == "__main__":
    main()
