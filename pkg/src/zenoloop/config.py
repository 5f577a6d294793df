"""Run configuration: a TOML file with sections, strictly validated.

Unknown sections or keys, wrong types and physically invalid values all
raise ``ConfigError`` carrying the offending line number when it can be
located.  ``dump_config`` writes the fully resolved configuration back as
TOML; loading that echo reproduces the same run.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from zenoloop.errors import ConfigError, DomainError
from zenoloop.loop import NOISE_PRESETS, ImagerConfig, LoopConfig, NoiseConfig
from zenoloop.zeno import ZenoParams

# (type, default) per key; None default means required
_SCHEMA = {
    None: {"seed": (int, None), "workers": (int, 1)},
    "zeno": {
        "theta": (float, math.pi / 8),
        "xi": (float, 0.244),
        "n_steps": (int, 7),
        "sigma": (float, 1.0),
        "x0": (float, 0.0),
    },
    "loop": {
        "n_photons": (int, 10000),
        "loop_period": (float, 1.0),
        "gate_halfwidth": (float, 0.25),
        "gating": (bool, True),
        "reinforcement_polarizer": (bool, False),
        "merge_center_tol": (float, 0.01),
        "amp_floor": (float, 1e-12),
    },
    "imager": {
        "pixel_count": (int, 32),
        "pixel_pitch": (float, 1.0),
        "center_offset": (float, 0.0),
    },
    "noise": {
        "preset": (str, "none"),
        **{f.name: (float, None) for f in fields(NoiseConfig)},
    },
    "exact": {"pdf_points": (int, 401)},
    "sweep": {
        "n_steps": (list, [10, 30, 100]),
        "xi": (list, [0.1]),
        "theta": (list, [math.pi / 8]),
        "photons": (int, 20000),
    },
    "ifm": {"n": (list, list(range(1, 65)))},
    "output": {"dir": (str, "out")},
}


@dataclass(frozen=True)
class SweepGrid:
    n_steps: tuple = (10, 30, 100)
    xi: tuple = (0.1,)
    theta: tuple = (math.pi / 8,)
    photons: int = 20000


@dataclass(frozen=True)
class RunConfig:
    seed: int
    loop: LoopConfig
    n_photons: int = 10000
    workers: int = 1
    noise_preset: str = "none"
    pdf_points: int = 401
    sweep: SweepGrid = field(default_factory=SweepGrid)
    ifm_n: tuple = tuple(range(1, 65))
    output_dir: str = "out"

    @property
    def zeno(self):
        return self.loop.zeno


def _find_line(lines, section, key=None):
    header = None
    current = None
    for i, raw in enumerate(lines, start=1):
        s = raw.strip()
        m = re.match(r"^\[\s*([^\]]+?)\s*\]", s)
        if m:
            current = m.group(1).strip().strip('"')
            if key is None and current == section:
                return i
            if current == section:
                header = i
            continue
        if key is not None and current == section and re.match(rf"^\"?{re.escape(key)}\"?\s*=", s):
            return i
    return header


def _coerce(value, typ, where, path, line):
    def bad(expected):
        return ConfigError(f"{where}: expected {expected}, got {value!r}", path, line)

    if typ is bool:
        if not isinstance(value, bool):
            raise bad("true/false")
        return value
    if typ is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise bad("an integer")
        return value
    if typ is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise bad("a number")
        return float(value)
    if typ is str:
        if not isinstance(value, str):
            raise bad("a string")
        return value
    if typ is list:
        if not isinstance(value, list) or not value:
            raise bad("a non-empty array")
        return value
    raise AssertionError(typ)


def parse_config(text, path="<config>"):
    lines = text.splitlines()
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ConfigError(f"malformed TOML: {exc}", path, int(m.group(1)) if m else None) from None

    values = {}
    for key, val in raw.items():
        if isinstance(val, dict):
            if key not in _SCHEMA or key is None:
                raise ConfigError(f"unknown section [{key}]", path, _find_line(lines, key))
            for sub, subval in val.items():
                if sub not in _SCHEMA[key]:
                    raise ConfigError(
                        f"unknown key '{sub}' in section [{key}]", path, _find_line(lines, key, sub)
                    )
                typ = _SCHEMA[key][sub][0]
                line = _find_line(lines, key, sub)
                values[(key, sub)] = (_coerce(subval, typ, f"{key}.{sub}", path, line), line)
        else:
            if key not in _SCHEMA[None]:
                raise ConfigError(f"unknown key '{key}'", path, _find_line(lines, None, key))
            line = _find_line(lines, None, key)
            values[(None, key)] = (_coerce(val, _SCHEMA[None][key][0], key, path, line), line)

    def get(section, key):
        if (section, key) in values:
            return values[(section, key)][0]
        return _SCHEMA[section][key][1]

    def line_of(section, key=None):
        if key is not None and (section, key) in values:
            return values[(section, key)][1]
        return _find_line(lines, section) if section else None

    if get(None, "seed") is None:
        raise ConfigError("missing required key 'seed'", path, None)

    def build(section, fn):
        try:
            return fn()
        except DomainError as exc:
            raise ConfigError(f"[{section}] {exc}", path, line_of(section)) from None

    zeno = build("zeno", lambda: ZenoParams(**{k: get("zeno", k) for k in _SCHEMA["zeno"]}))
    imager = build("imager", lambda: ImagerConfig(**{k: get("imager", k) for k in _SCHEMA["imager"]}))

    preset = get("noise", "preset")
    if preset not in NOISE_PRESETS:
        raise ConfigError(
            f"unknown noise preset {preset!r}; known: {', '.join(sorted(NOISE_PRESETS))}",
            path,
            line_of("noise", "preset"),
        )
    base = NOISE_PRESETS[preset]
    noise_kwargs = {}
    for f in fields(NoiseConfig):
        v = get("noise", f.name)
        noise_kwargs[f.name] = getattr(base, f.name) if v is None else v
    noise = build("noise", lambda: NoiseConfig(**noise_kwargs))

    loop = build(
        "loop",
        lambda: LoopConfig(
            zeno=zeno,
            loop_period=get("loop", "loop_period"),
            gate_halfwidth=get("loop", "gate_halfwidth"),
            imager=imager,
            noise=noise,
            reinforcement_polarizer=get("loop", "reinforcement_polarizer"),
            gating=get("loop", "gating"),
            merge_center_tol=get("loop", "merge_center_tol"),
            amp_floor=get("loop", "amp_floor"),
        ),
    )

    def check(cond, section, key, msg):
        if not cond:
            raise ConfigError(f"{section}.{key}: {msg}" if section else f"{key}: {msg}", path, line_of(section, key))

    n_photons = get("loop", "n_photons")
    check(n_photons >= 1, "loop", "n_photons", "must be >= 1")
    workers = get(None, "workers")
    check(workers >= 1, None, "workers", "must be >= 1")
    pdf_points = get("exact", "pdf_points")
    check(pdf_points >= 2, "exact", "pdf_points", "must be >= 2")

    sw_n = get("sweep", "n_steps")
    check(all(isinstance(v, int) and not isinstance(v, bool) and v >= 1 for v in sw_n), "sweep", "n_steps", "entries must be integers >= 1")
    sw_xi = get("sweep", "xi")
    check(all(_is_num(v) and v > 0 for v in sw_xi), "sweep", "xi", "entries must be numbers > 0")
    sw_theta = get("sweep", "theta")
    check(all(_is_num(v) and math.isfinite(v) for v in sw_theta), "sweep", "theta", "entries must be finite numbers")
    sw_photons = get("sweep", "photons")
    check(sw_photons >= 1, "sweep", "photons", "must be >= 1")
    ifm_n = get("ifm", "n")
    check(all(isinstance(v, int) and not isinstance(v, bool) and v >= 1 for v in ifm_n), "ifm", "n", "entries must be integers >= 1")

    return RunConfig(
        seed=get(None, "seed"),
        loop=loop,
        n_photons=n_photons,
        workers=workers,
        noise_preset=preset,
        pdf_points=pdf_points,
        sweep=SweepGrid(tuple(sw_n), tuple(float(v) for v in sw_xi), tuple(float(v) for v in sw_theta), sw_photons),
        ifm_n=tuple(ifm_n),
        output_dir=get("output", "dir"),
    )


def _is_num(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from None
    return parse_config(text, str(path))


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    raise TypeError(type(v))


def dump_config(rc: RunConfig) -> str:
    """Resolved configuration as TOML (round-trips through ``parse_config``)."""
    z, lp, im, nz = rc.zeno, rc.loop, rc.loop.imager, rc.loop.noise
    sections = [
        (None, {"seed": rc.seed, "workers": rc.workers}),
        ("zeno", {"theta": z.theta, "xi": z.xi, "n_steps": z.n_steps, "sigma": z.sigma, "x0": z.x0}),
        (
            "loop",
            {
                "n_photons": rc.n_photons,
                "loop_period": lp.loop_period,
                "gate_halfwidth": lp.gate_halfwidth,
                "gating": lp.gating,
                "reinforcement_polarizer": lp.reinforcement_polarizer,
                "merge_center_tol": lp.merge_center_tol,
                "amp_floor": lp.amp_floor,
            },
        ),
        ("imager", {"pixel_count": im.pixel_count, "pixel_pitch": im.pixel_pitch, "center_offset": im.center_offset}),
        ("noise", {"preset": rc.noise_preset, **{f.name: getattr(nz, f.name) for f in fields(NoiseConfig)}}),
        ("exact", {"pdf_points": rc.pdf_points}),
        (
            "sweep",
            {
                "n_steps": list(rc.sweep.n_steps),
                "xi": list(rc.sweep.xi),
                "theta": list(rc.sweep.theta),
                "photons": rc.sweep.photons,
            },
        ),
        ("ifm", {"n": list(rc.ifm_n)}),
        ("output", {"dir": rc.output_dir}),
    ]
    out = []
    for name, kv in sections:
        if name is not None:
            out.append(f"\n[{name}]")
        out.extend(f"{k} = {_fmt(v)}" for k, v in kv.items())
    return "\n".join(out) + "\n"
