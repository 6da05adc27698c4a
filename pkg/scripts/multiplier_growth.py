#!/usr/bin/env python3
"""Build PR' per-node diagrams for a range of multiplier widths and estimate growth bases.

Writes ``records.csv`` (label,n_vars,node_count) and ``growth.csv`` into the
output directory and prints the growth table.
"""

from __future__ import annotations

import argparse
import logging
import time
from dataclasses import dataclass
from pathlib import Path

from patternsat.analysis import growth_csv, growth_table
from patternsat.circuits import gen_multiplier
from patternsat.fbdd import PER_NODE, build_pr_prime

log = logging.getLogger("multiplier_growth")


@dataclass
class GrowthConfig:
    min_ibits: int = 4
    max_ibits: int = 8
    out_dir: Path = Path("results")


def run(cfg: GrowthConfig) -> list:
    records = []
    for ibits in range(cfg.min_ibits, cfg.max_ibits + 1):
        s = gen_multiplier(ibits).clause_set
        t0 = time.perf_counter()
        _, stats, _ = build_pr_prime(s, PER_NODE)
        log.info("ibits %d: N=%d M=%d nodes=%d (%.1fs)", ibits, s.num_vars, len(s),
                 stats.unique_nonterminal_nodes, time.perf_counter() - t0)
        records.append((str(ibits), s.num_vars, stats.unique_nonterminal_nodes))
    return records


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min-ibits", type=int, default=GrowthConfig.min_ibits)
    p.add_argument("--max-ibits", type=int, default=GrowthConfig.max_ibits)
    p.add_argument("--out-dir", type=Path, default=GrowthConfig.out_dir)
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    cfg = GrowthConfig(args.min_ibits, args.max_ibits, args.out_dir)

    records = run(cfg)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    lines = ["label,n_vars,node_count"] + [f"{l},{n},{c}" for l, n, c in records]
    (cfg.out_dir / "records.csv").write_text("\n".join(lines) + "\n")
    table = growth_csv(growth_table(records))
    (cfg.out_dir / "growth.csv").write_text(table)
    print(table, end="")


if __name__ == "__main__":
    main()
