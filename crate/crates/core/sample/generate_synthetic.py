"""Writes the synthetic sample inputs in this directory.

None of these series are measurements. They have roughly the shape and
magnitude of an industrial steam load and of 2024 day-ahead and FCR prices
so that the pipeline and the CLI can be exercised end to end.
"""

import csv
from datetime import datetime, timedelta, timezone

import numpy as np

HOURS = 8784
START = datetime(2024, 1, 1, tzinfo=timezone.utc)


def write(path, start, step, values):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["timestamp", "value"])
        for i, v in enumerate(values):
            ts = start + timedelta(seconds=step * i)
            w.writerow([ts.strftime("%Y-%m-%dT%H:%M:%SZ"), f"{v:.6f}"])


def steam(rng):
    # 96 h at 1 min, Monday 11:00 to Friday 11:00.
    t = np.arange(96 * 60) / 60.0
    batch = np.clip(np.sin(2 * np.pi * t / 3.7), 0, None) ** 3
    shift = 0.6 + 0.4 * (np.sin(2 * np.pi * (t + 11 - 8) / 24) > -0.3)
    noise = rng.normal(0, 0.03, t.size)
    v = np.clip(0.08 + 0.42 * batch * shift + noise, 0, None)
    return v * (0.185 / v.mean())


def spot(rng, mean, daily, seasonal, vol, negative_hours):
    h = np.arange(HOURS)
    hod = h % 24
    day_shape = np.exp(-((hod - 8) ** 2) / 6) + 1.2 * np.exp(-((hod - 18) ** 2) / 5) - 0.6
    season = np.cos(2 * np.pi * (h / HOURS - 0.04))
    weekday = ((h // 24) % 7) < 5
    ar = np.zeros(HOURS)
    e = rng.normal(0, vol, HOURS)
    for i in range(1, HOURS):
        ar[i] = 0.97 * ar[i - 1] + e[i]
    p = mean * (1 + seasonal * season) + daily * day_shape * (0.7 + 0.3 * weekday) + ar
    if negative_hours:
        idx = rng.choice(HOURS, negative_hours, replace=False)
        p[idx] = -np.abs(rng.normal(0.01, 0.01, negative_hours))
    return p


def fcr(rng, mean, vol):
    h = np.arange(HOURS)
    base = mean * (1 + 0.3 * np.sin(2 * np.pi * h / 24 + 1.0))
    return np.clip(base * rng.lognormal(0, vol, HOURS), 0, None)


def main():
    rng = np.random.default_rng(2024)
    raw_start = START + timedelta(hours=11)
    write("steam_raw_1min.csv", raw_start, 60, steam(rng))
    # Norway series are in NOK, Germany in EUR.
    write("spot_no_nok.csv", START, 3600, spot(rng, 0.44, 0.08, 0.25, 0.02, 0))
    write("fcr_no_nok.csv", START, 3600, fcr(rng, 0.35, 0.5))
    write("spot_de_eur.csv", START, 3600, spot(rng, 0.078, 0.035, 0.15, 0.008, 300))
    write("fcr_de_eur.csv", START, 3600, fcr(rng, 0.012, 0.4))


if __name__ == "__main__":
    main()
