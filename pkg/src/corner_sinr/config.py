"""INI scenario files.

Example (all keys optional, defaults give the reference scenario)::

    [radio]
    tx_power_dbm = 20
    noise_dbm = -99
    sinr_threshold_db = 8

    [channel]
    kind = urban
    alpha = 1.68
    breakpoint_m = 15

    [roads]
    half_len_x_m = 200
    half_len_y_m = 200
    intensity_x = 0.01
    intensity_y = 0.01
    tx_prob = 0.02

    [link]
    tx_road = y
    tx_coord_m = 50
    rx_coord_m = -50

``a0_db`` and ``a0p_db`` default to the table formulas evaluated at the
configured ``alpha`` and ``breakpoint_m``.
"""

from __future__ import annotations

import configparser
import math
from pathlib import Path

from .scene import Link, Position, RadioParams, RoadNetwork, Scenario, Suburban, Urban

REQUIRED_SECTIONS = ("radio", "channel", "roads")
KEYS = {
    "radio": {"tx_power_dbm", "noise_dbm", "sinr_threshold_db"},
    "channel": {"kind", "alpha", "a0_db", "a0p_db", "breakpoint_m"},
    "roads": {"half_len_x_m", "half_len_y_m", "intensity_x", "intensity_y", "tx_prob"},
    "link": {"tx_road", "tx_coord_m", "rx_coord_m"},
}


class ConfigError(ValueError):
    """Unreadable or ill-formed scenario file."""


def _floats(section, names) -> dict:
    out = {}
    for key in names:
        if key in section:
            try:
                out[key] = float(section[key])
            except ValueError:
                raise ConfigError(
                    f"[{section.name}] {key}: not a number: {section[key]!r}"
                ) from None
    return out


def parse_config(text: str) -> tuple[Scenario, Link]:
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    for name in REQUIRED_SECTIONS:
        if not cp.has_section(name):
            raise ConfigError(f"missing [{name}] section")
    for name in cp.sections():
        if name not in KEYS:
            raise ConfigError(f"unknown section [{name}]")
        extra = set(cp[name]) - KEYS[name]
        if extra:
            raise ConfigError(f"[{name}] unknown keys: {', '.join(sorted(extra))}")

    radio = RadioParams(**_floats(cp["radio"], KEYS["radio"]))

    ch = cp["channel"]
    kind = ch.get("kind", "suburban").strip().lower()
    vals = _floats(ch, KEYS["channel"] - {"kind"})
    if kind == "suburban":
        if "a0p_db" in vals or "breakpoint_m" in vals:
            raise ConfigError("[channel] a0p_db/breakpoint_m apply to the urban model only")
        channel = Suburban(**vals)
    elif kind == "urban":
        channel = Urban(**vals)
    else:
        raise ConfigError(f"[channel] kind must be suburban or urban, got {kind!r}")

    rv = _floats(cp["roads"], KEYS["roads"])
    rename = {"half_len_x_m": "half_len_x", "half_len_y_m": "half_len_y"}
    roads = RoadNetwork(**{rename.get(k, k): v for k, v in rv.items()})

    link = Link(Position.vertical(50.0), Position.horizontal(-50.0))
    if cp.has_section("link"):
        lk = cp["link"]
        road = lk.get("tx_road", "y").strip().lower()
        if road not in ("x", "y"):
            raise ConfigError(f"[link] tx_road must be x or y, got {road!r}")
        lv = _floats(lk, {"tx_coord_m", "rx_coord_m"})
        try:
            link = Link(
                Position(road, lv.get("tx_coord_m", 50.0)),
                Position.horizontal(lv.get("rx_coord_m", -50.0)),
            )
        except ValueError as exc:
            raise ConfigError(f"[link] {exc}") from None
    return Scenario(radio, channel, roads), link


def load_config(path: str | Path) -> tuple[Scenario, Link]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return parse_config(text)


def _num(v: float) -> str:
    return "inf" if math.isinf(v) else repr(float(v))


def dump_config(s: Scenario, link: Link) -> str:
    """INI text that :func:`parse_config` turns back into ``(s, link)``."""
    ch = s.channel
    lines = [
        "[radio]",
        f"tx_power_dbm = {_num(s.radio.tx_power_dbm)}",
        f"noise_dbm = {_num(s.radio.noise_dbm)}",
        f"sinr_threshold_db = {_num(s.radio.sinr_threshold_db)}",
        "",
        "[channel]",
        f"kind = {ch.kind}",
        f"alpha = {_num(ch.alpha)}",
        f"a0_db = {_num(ch.a0_db)}",
    ]
    if isinstance(ch, Urban):
        lines += [f"a0p_db = {_num(ch.a0p_db)}", f"breakpoint_m = {_num(ch.breakpoint_m)}"]
    r = s.roads
    lines += [
        "",
        "[roads]",
        f"half_len_x_m = {_num(r.half_len_x)}",
        f"half_len_y_m = {_num(r.half_len_y)}",
        f"intensity_x = {_num(r.intensity_x)}",
        f"intensity_y = {_num(r.intensity_y)}",
        f"tx_prob = {_num(r.tx_prob)}",
        "",
        "[link]",
        f"tx_road = {link.tx.road}",
        f"tx_coord_m = {_num(link.tx.coord)}",
        f"rx_coord_m = {_num(link.rx.coord)}",
        "",
    ]
    return "\n".join(lines)
