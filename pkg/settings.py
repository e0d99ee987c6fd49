"""JSON settings for the arbor CLI and verify suites"""

import copy
import json
import logging
from pathlib import Path

from algebra import FREE, AlgebraError, TableSemigroup

log = logging.getLogger(__name__)

SETTINGS_PATH = Path(__file__).parent / "config" / "settings.json"

DEFAULT_SETTINGS = {
    "output": {
        "format": "text"
    },
    "algebra": {
        "semigroup": "free",
        "alphabet": ["a", "b"],
        "table": {}
    },
    "verify": {
        "max_vertices": 5,
        "max_vertices_plain": 7,
        "max_word_length": 6,
        "bseries_order": 4,
        "random_trials": 10,
        "seed": 20240101,
        "workers": 4
    }
}

FORMATS = ("text", "structured")


def load_settings():
    """Load settings from JSON file"""
    if not SETTINGS_PATH.exists():
        save_settings(DEFAULT_SETTINGS)
        return copy.deepcopy(DEFAULT_SETTINGS)

    try:
        with open(SETTINGS_PATH, 'r') as f:
            settings = json.load(f)
        # Merge with defaults to handle missing keys
        merged = {}
        for key, default in DEFAULT_SETTINGS.items():
            if isinstance(default, dict):
                merged[key] = {**copy.deepcopy(default), **settings.get(key, {})}
            else:
                merged[key] = settings.get(key, default)
        return merged
    except (json.JSONDecodeError, IOError, AttributeError) as e:
        log.warning("Unreadable settings at %s (%s), using defaults", SETTINGS_PATH, e)
        return copy.deepcopy(DEFAULT_SETTINGS)


def save_settings(settings):
    """Save settings to JSON file"""
    SETTINGS_PATH.parent.mkdir(parents=True, exist_ok=True)
    with open(SETTINGS_PATH, 'w') as f:
        json.dump(settings, f, indent=2)


def update_settings(updates):
    """Update specific settings keys (deep merge for dicts)"""
    settings = load_settings()
    for key, value in updates.items():
        if isinstance(value, dict) and key in settings and isinstance(settings[key], dict):
            settings[key].update(value)
        else:
            settings[key] = value
    save_settings(settings)
    return settings


def load_table(path):
    """Read a semigroup table file {"a b": "c", ...}"""
    try:
        with open(path, 'r') as f:
            table = json.load(f)
    except (json.JSONDecodeError, IOError) as e:
        raise AlgebraError(f"cannot read semigroup table {path}: {e}") from None
    if not isinstance(table, dict):
        raise AlgebraError(f"semigroup table {path} must be a JSON object")
    return table


def resolve_semigroup(choice, table=None):
    """'free' or 'table:<file>'; an inline table from settings is used for 'table'"""
    if choice in (None, "", "free"):
        return FREE
    if choice == "table":
        if not table:
            raise AlgebraError("semigroup 'table' needs algebra.table in settings")
        return TableSemigroup(table)
    if choice.startswith("table:"):
        return TableSemigroup(load_table(choice[len("table:"):]))
    raise AlgebraError(f"unknown semigroup {choice!r}, expected 'free' or 'table:<file>'")


def parse_alphabet(text):
    letters = [a.strip() for a in text.split(",") if a.strip()]
    if not letters:
        raise AlgebraError("alphabet must be a nonempty comma-separated list")
    return letters
