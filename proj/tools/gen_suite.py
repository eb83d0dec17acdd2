#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The wavereg Authors

"""Writes the seeded anomaly scenarios under scenarios/suite/.

Every scenario runs 2570 s at 10 s (257 snapshots, one 256-sample window of
deltas). Anomalies start after the first half of the window so the default
training prefix stays clean, and start on a polling boundary.
"""

import argparse
import pathlib
import random

KINDS = ["spike", "dropout", "drift"]


def scenario(index: int) -> str:
    rng = random.Random(7000 + index)
    kind = KINDS[index % 3]
    jitter = round(rng.uniform(0.03, 0.06), 3)
    rx = rng.choice([20000, 40000, 80000])
    tx = rng.choice([250000, 500000, 800000])
    direction = rng.choice(["both", "tx", "rx"])

    if kind == "spike":
        sigmas = rng.uniform(8.0, 16.0)
        magnitude = round(1.0 + sigmas * jitter, 3)
        duration = 10 * rng.randint(6, 30)
    elif kind == "dropout":
        magnitude = round(rng.uniform(0.0, 0.5), 3)
        duration = 10 * rng.randint(6, 30)
    else:
        magnitude = round(rng.uniform(1.8, 2.6), 3)
        duration = 10 * rng.randint(30, 60)
    t0 = 10 * rng.randint(140, 256 - duration // 10 - 2)

    lines = [
        f"# Suite scenario {index:02d}: {kind} on port 1 ({direction}).",
        f"name = suite-{index:02d}-{kind}",
        "duration = 2570",
        "interval = 10",
        f"seed = {1000 + index}",
        "",
        "[switch]",
        "id = 1",
        "server_ports = 1",
        "",
        "[port]",
        "switch = 1",
        "id = 1",
        f"rx_rate = {rx}",
        f"tx_rate = {tx}",
        f"jitter = {jitter}",
        "packet_size = 1316",
        "",
        "[port]",
        "switch = 1",
        "id = 2",
        f"rate = {rng.choice([50000, 100000])}",
        "jitter = 0.1",
        "",
        "[anomaly]",
        "switch = 1",
        "port = 1",
        f"kind = {kind}",
        f"direction = {direction}",
        f"t0 = {t0}",
        f"duration = {duration}",
        f"magnitude = {magnitude}",
        "",
    ]
    return "\n".join(lines)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=24)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent / "scenarios" / "suite")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        kind = KINDS[i % 3]
        (args.out / f"suite-{i:02d}-{kind}.scn").write_text(scenario(i))


if __name__ == "__main__":
    main()
