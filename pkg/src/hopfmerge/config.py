"""Run configuration: instance ranges and mode switches for the checkers."""
from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

RESERVED = frozenset({"{", "}", "[", "]", "<", ">", "sel", "lsr", "lse"})
_SYMBOL = re.compile(r"^[A-Za-z0-9_']+$")


@dataclass
class Config:
    # tree enumeration and magma
    enum_max_internal: int = 8
    enum_label_counts: list = field(default_factory=lambda: [1, 2])
    ds_max_n: int = 8
    trees_max_leaves: int = 5
    trees_alphabet: list = field(default_factory=lambda: ["a", "b"])
    # Loday-Ronco
    lr_max_degree: int = 3
    lr_assoc_max_degree: int = 4
    lr_assoc_max_total: int = 8
    lr_agree_max_degree: int = 4
    # MG / Stabler
    mg_alphabet: list = field(default_factory=lambda: ["A", "B"])
    mg_mode: str = "first"
    mg_smc: str = "unique"
    mg_coideal_max_leaves: int = 6
    mg_ideal_max_leaves: int = 5
    mg_nested_max_leaves: int = 5
    mg_cocycle_max_leaves: int = 4
    mg_cocycle_alphabet: list = field(default_factory=lambda: ["A"])
    mg_symmetry_reduced: bool = True
    # workspaces
    ws_max_components: int = 2
    ws_max_leaves: int = 3
    ws_alphabet: list = field(default_factory=lambda: ["a", "b"])
    ws_full_cover: bool = True
    # externalization
    ext_max_leaves: int = 5
    ext_section_max_leaves: int = 3
    ext_alphabet: list = field(default_factory=lambda: ["a", "b"])
    ext_obstruction_alphabet_sizes: list = field(default_factory=lambda: [1, 2, 3])

    def __post_init__(self):
        for name in ("trees_alphabet", "mg_alphabet", "mg_cocycle_alphabet", "ws_alphabet", "ext_alphabet"):
            symbols = getattr(self, name)
            if not symbols:
                raise ValueError(f"{name} must not be empty")
            bad = [x for x in symbols if x in RESERVED or not _SYMBOL.match(str(x))]
            if bad:
                raise ValueError(f"{name} contains reserved or malformed symbols: {bad}")
        if self.mg_mode not in ("first", "full"):
            raise ValueError(f"mg_mode must be 'first' or 'full', not {self.mg_mode!r}")
        if self.mg_smc not in ("unique", "sum-all"):
            raise ValueError(f"mg_smc must be 'unique' or 'sum-all', not {self.mg_smc!r}")

    def to_json(self) -> dict:
        return asdict(self)


def _parse_value(raw: str, current):
    raw = raw.strip()
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        pass
    if isinstance(current, list):
        return [x.strip() for x in raw.split(",") if x.strip()]
    return raw


def parse_config_text(text: str) -> dict:
    """A JSON object, or ``key = value`` lines (``#`` starts a comment)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        return data
    defaults = Config()
    data = {}
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line {n}: expected key = value")
        key = key.strip()
        data[key] = _parse_value(value, getattr(defaults, key, None))
    return data


def load_config(path: str | Path | None = None, **overrides) -> Config:
    data: dict = {}
    if path:
        data = parse_config_text(Path(path).read_text())
    data.update({k: v for k, v in overrides.items() if v is not None})
    known = {f.name for f in fields(Config)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    return Config(**data)
