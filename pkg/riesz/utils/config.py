"""Settings persistence for analyses and the harness."""

import configparser
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path


logger = logging.getLogger(__name__)

CONFIG_DIR = Path.home() / ".config" / "riesz"
CONFIG_FILE = CONFIG_DIR / "config.ini"


@dataclass(frozen=True)
class Limits:
    """Capacity limits; every enumeration checks one of these."""

    max_dimension: int = 12
    max_functionals: int = 16
    max_rays: int = 128
    max_closure: int = 4096
    max_cells: int = 20000


@dataclass
class AnalysisConfig:
    """Analysis configuration settings."""

    limits: Limits = field(default_factory=Limits)

    # Search
    seed: int = 0
    rdp_attempts: int = 200
    rdp_samples: int = 25

    # Harness
    harness_count: int = 200
    harness_max_dim: int = 4
    harness_max_rays: int = 8
    harness_coeff_bound: int = 3
    harness_workers: int = 1

    # Report
    record_timing: bool = True


def load_config(path: Path | None = None) -> AnalysisConfig:
    """Load configuration from file."""
    path = path or CONFIG_FILE
    config = AnalysisConfig()

    if not path.exists():
        return config

    parser = configparser.ConfigParser()
    try:
        parser.read(path)

        # Limits section
        if "Limits" in parser:
            limits = parser["Limits"]
            config.limits = Limits(
                max_dimension=limits.getint("max_dimension", config.limits.max_dimension),
                max_functionals=limits.getint("max_functionals", config.limits.max_functionals),
                max_rays=limits.getint("max_rays", config.limits.max_rays),
                max_closure=limits.getint("max_closure", config.limits.max_closure),
                max_cells=limits.getint("max_cells", config.limits.max_cells),
            )

        # Search section
        if "Search" in parser:
            search = parser["Search"]
            config.seed = search.getint("seed", config.seed)
            config.rdp_attempts = search.getint("rdp_attempts", config.rdp_attempts)
            config.rdp_samples = search.getint("rdp_samples", config.rdp_samples)

        # Harness section
        if "Harness" in parser:
            harness = parser["Harness"]
            config.harness_count = harness.getint("count", config.harness_count)
            config.harness_max_dim = harness.getint("max_dim", config.harness_max_dim)
            config.harness_max_rays = harness.getint("max_rays", config.harness_max_rays)
            config.harness_coeff_bound = harness.getint("coeff_bound", config.harness_coeff_bound)
            config.harness_workers = harness.getint("workers", config.harness_workers)

        # Report section
        if "Report" in parser:
            config.record_timing = parser["Report"].getboolean("record_timing", config.record_timing)

    except (configparser.Error, ValueError) as exc:
        logger.warning("ignoring malformed config %s: %s", path, exc)
        return AnalysisConfig()

    return config


def save_config(config: AnalysisConfig, path: Path | None = None) -> None:
    """Save configuration to file."""
    path = path or CONFIG_FILE
    path.parent.mkdir(parents=True, exist_ok=True)

    parser = configparser.ConfigParser()

    parser["Limits"] = {
        "max_dimension": str(config.limits.max_dimension),
        "max_functionals": str(config.limits.max_functionals),
        "max_rays": str(config.limits.max_rays),
        "max_closure": str(config.limits.max_closure),
        "max_cells": str(config.limits.max_cells),
    }

    parser["Search"] = {
        "seed": str(config.seed),
        "rdp_attempts": str(config.rdp_attempts),
        "rdp_samples": str(config.rdp_samples),
    }

    parser["Harness"] = {
        "count": str(config.harness_count),
        "max_dim": str(config.harness_max_dim),
        "max_rays": str(config.harness_max_rays),
        "coeff_bound": str(config.harness_coeff_bound),
        "workers": str(config.harness_workers),
    }

    parser["Report"] = {
        "record_timing": str(config.record_timing).lower(),
    }

    with open(path, "w") as f:
        parser.write(f)
    logger.info("wrote config %s", path)


def with_limits(config: AnalysisConfig, **overrides: int) -> AnalysisConfig:
    """Copy of ``config`` with some limits replaced."""
    return replace(config, limits=replace(config.limits, **overrides))
