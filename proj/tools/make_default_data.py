#!/usr/bin/env python3
"""Regenerate the synthetic input data shipped under data/.

data/default/<scenario>/          five-yearly socio-economic knots and
                                  per-member raw climate forecasts
data/calibration_example/         small historical-style series for the
                                  `calibrate` subcommand

The forecasts are deterministic and illustrative: a corrected-scale target
(base + scenario trend + seasonal cycle + a slow ENSO-like wiggle) is mapped
back to each member's raw scale through the inverse of its bias correction,
so `apply_bias_correction` recovers the target.
"""

import math
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent
DEFAULT = ROOT / "data" / "default"
CALIB = ROOT / "data" / "calibration_example"

FIRST_YEAR = 2020
LAST_YEAR = 2060

# (intercept, slope) of the bias correction per member and variable.
BIAS = {
    "ACCESS-CM2": {
        "t_surface": (2.257, 0.883),
        "t_midtrop": (0.926, 1.045),
        "sst": (-2.418, 0.996),
        "sst_gradient": (-0.199, 1.31),
        "fwixx": (-17.133, 1.306),
        "rx5day": (2.811, 1.156),
    },
    "MIROC6": {
        "t_surface": (-0.85, 0.931),
        "t_midtrop": (-4.526, 0.86),
        "fwixx": (30.162, 0.911),
        "rx5day": (-45.993, 1.728),
    },
    "MPI-ESM1-2-LR": {
        "t_surface": (1.441, 0.916),
        "t_midtrop": (1.847, 1.036),
        "fwixx": (-23.581, 1.359),
        "rx5day": (-3.133, 1.185),
    },
}

# Member spread in warming response and a phase for internal variability.
MEMBER_TREND = {"ACCESS-CM2": 1.15, "MIROC6": 0.90, "MPI-ESM1-2-LR": 1.00}
MEMBER_PHASE = {"ACCESS-CM2": 0.0, "MIROC6": 2.1, "MPI-ESM1-2-LR": 4.2}

# Corrected-scale target: base, trend per degree of warming, seasonal
# amplitude, peak month, wiggle amplitude. Annual variables have no season.
TARGET = {
    "t_surface": (22.0, 1.0, 5.5, 1, 0.30),
    "t_midtrop": (-20.0, 1.1, 2.5, 2, 0.25),
    "sst": (25.0, 0.8, 1.5, 3, 0.20),
    "sst_gradient": (-0.30, 0.1, 0.20, 6, 0.05),
    "fwixx": (50.0, 8.0, 0.0, 0, 4.0),
    "rx5day": (90.0, 6.3, 0.0, 0, 8.0),
}
ANNUAL = {"fwixx", "rx5day"}

# Warming of near-surface temperature, degC per year after 2024.
SCENARIOS = {
    "ssp126": dict(warming=0.012, growth=(0.024, 0.020, 0.016), pop2060=36.0e6, brown2060=20.0),
    "ssp245": dict(warming=0.022, growth=(0.022, 0.018, 0.015), pop2060=37.0e6, brown2060=70.0),
    "ssp370": dict(warming=0.030, growth=(0.016, 0.011, 0.008), pop2060=30.0e6, brown2060=110.0),
    "ssp585": dict(warming=0.040, growth=(0.029, 0.025, 0.021), pop2060=44.0e6, brown2060=150.0),
}


def growth_at(year, growth):
    if year < 2030:
        return growth[0]
    if year < 2045:
        return growth[1]
    return growth[2]


def write_series(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(header + "\n")
        for period, value in rows:
            f.write(f"{period},{value:.6f}\n")


def target_value(var, scen, member, year, month):
    base, per_degree, amp, peak, wiggle = TARGET[var]
    warming = SCENARIOS[scen]["warming"] * MEMBER_TREND[member] * max(0, year - 2024)
    t = year + (month - 0.5) / 12.0 if month else year + 0.5
    value = base + per_degree * warming
    value += wiggle * math.sin(2.0 * math.pi * t / 3.7 + MEMBER_PHASE[member])
    if month:
        value += amp * math.cos(2.0 * math.pi * (month - peak) / 12.0)
    return value


def socio_economic(scen_dir, spec):
    knots = list(range(FIRST_YEAR, LAST_YEAR + 1, 5))
    gdp = 2.35e6
    gdp_rows, g_rows, pop_rows, brown_rows = [], [], [], []
    for i, year in enumerate(knots):
        if i > 0:
            gdp *= (1.0 + growth_at(knots[i - 1], spec["growth"])) ** 5
        frac = (year - FIRST_YEAR) / (LAST_YEAR - FIRST_YEAR)
        gdp_rows.append((year, gdp))
        g_rows.append((year, growth_at(year, spec["growth"])))
        pop_rows.append((year, 25.7e6 + frac * (spec["pop2060"] - 25.7e6)))
        brown_rows.append((year, 100.0 + frac * (spec["brown2060"] - 100.0)))
    write_series(scen_dir / "gdp.csv", "year,value", gdp_rows)
    write_series(scen_dir / "potential_growth.csv", "year,value", g_rows)
    write_series(scen_dir / "population.csv", "year,value", pop_rows)
    write_series(scen_dir / "brown_production.csv", "year,value", brown_rows)


def climate(scen_dir, scen):
    for member, variables in BIAS.items():
        for var, (b0, b1) in variables.items():
            rows = []
            for year in range(FIRST_YEAR, LAST_YEAR + 1):
                months = [0] if var in ANNUAL else range(1, 13)
                for month in months:
                    corrected = target_value(var, scen, member, year, month)
                    raw = (corrected - b0) / b1
                    period = f"{year}" if month == 0 else f"{year}-{month:02d}"
                    rows.append((period, raw))
            write_series(scen_dir / "climate" / member / f"{var}.csv", "period,value", rows)


def calibration_example():
    rng = np.random.default_rng(20240601)
    CALIB.mkdir(parents=True, exist_ok=True)
    years = np.arange(1967, 2022)

    # Flood frequency: Poisson GLM on rx5day.
    rx5day = rng.normal(90.0, 18.0, size=years.size)
    rate = np.exp(-3.714 + 0.037 * rx5day)
    counts = rng.poisson(rate)
    with open(CALIB / "flood_counts.csv", "w") as f:
        f.write("period,count,rx5day\n")
        for y, c, x in zip(years, counts, rx5day):
            f.write(f"{y},{c},{x:.4f}\n")

    # Historical events: flood severities on rx5day, normalised to 2022.
    with open(CALIB / "annual_covariates.csv", "w") as f:
        f.write("period,rx5day\n")
        for y, x in zip(years, rx5day):
            f.write(f"{y},{x:.4f}\n")
    with open(CALIB / "historical_losses.csv", "w") as f:
        f.write("event_date,hazard_id,nominal_loss,cpi_index,real_gdp_index\n")
        for y, c, x in zip(years, counts, rx5day):
            cpi = 1.0517 ** (y - 2022)
            gdp = 1.025 ** (y - 2022)
            for k in range(int(c)):
                normalised = math.exp(2.55 + 0.035 * x + 1.5 * rng.normal())
                month = 1 + (k * 5) % 12
                f.write(f"{y}-{month:02d}-15,flood,{normalised * cpi * gdp:.4f},{cpi:.6f},{gdp:.6f}\n")

    # Inflation: AR(1) with the published long-run mean, persistence, volatility.
    x = 0.0517
    with open(CALIB / "inflation.csv", "w") as f:
        f.write("period,value\n")
        for y in range(1951, 2024):
            x = 0.0517 + 0.713 * (x - 0.0517) + 0.0309 * rng.normal()
            f.write(f"{y},{x:.6f}\n")

    # Real rates on potential growth.
    z = -0.0005
    with open(CALIB / "real_rates.csv", "w") as f:
        f.write("period,real_rate,potential_growth\n")
        for y in range(1990, 2024):
            g = 0.025 + 0.006 * rng.normal()
            z = -0.0005 + 0.478 * (z + 0.0005) + 0.025 * rng.normal()
            f.write(f"{y},{-0.04 + 2.206 * g + z:.6f},{g:.6f}\n")

    # Quantile mapping: observations vs a biased backcast.
    months = [(y, m) for y in range(1990, 2022) for m in range(1, 13)]
    obs, back = [], []
    for y, m in months:
        clim = 22.0 + 5.5 * math.cos(2.0 * math.pi * (m - 1) / 12.0)
        noise = 1.2 * rng.normal()
        obs.append(clim + noise)
        back.append((clim - 2.257) / 0.883 + 0.3 * rng.normal())
    with open(CALIB / "t_surface_obs.csv", "w") as f:
        f.write("period,value\n")
        for (y, m), v in zip(months, obs):
            f.write(f"{y}-{m:02d},{v:.4f}\n")
    with open(CALIB / "t_surface_ACCESS-CM2_backcast.csv", "w") as f:
        f.write("period,value\n")
        for (y, m), v in zip(months, back):
            f.write(f"{y}-{m:02d},{v:.4f}\n")

    # Non-CAT per-risk losses (Tweedie via compound Poisson-Gamma).
    mu, phi, p = 100.0, 10.0, 1.5
    lam = mu ** (2 - p) / (phi * (2 - p))
    shape = (2 - p) / (p - 1)
    scale = phi * (p - 1) * mu ** (p - 1)
    with open(CALIB / "noncat_unit_losses.csv", "w") as f:
        f.write("period,value\n")
        for y in range(1900, 2024):
            n = rng.poisson(lam)
            v = rng.gamma(shape * n, scale) if n > 0 else 0.0
            f.write(f"{y},{v:.6f}\n")


def main():
    for scen, spec in SCENARIOS.items():
        scen_dir = DEFAULT / scen
        socio_economic(scen_dir, spec)
        climate(scen_dir, scen)
    calibration_example()


if __name__ == "__main__":
    main()
