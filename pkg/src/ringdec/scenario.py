"""Scenario configuration: INI-style files, presets and --set overrides.

A scenario is three blocks::

    [system]
    n_particles = 60          # float accepted for astronomical sizes
    particle_mass = 1.9926e-26
    coupling = 1e14           # rad/s
    light_speed = 299792458.0 # optional override
    hbar = 1.054571817e-34    # optional override

    [state]
    kind = momentum-superposition   # or: cat
    v1 = 1000.0               # velocities (m/s) ...
    v2 = 200.0
    # p1/p2 = ...             # ... or momenta (kg m/s), mutually exclusive
    # alpha = 5+3j            # cat states: complex amplitudes (python j form)
    # beta = 3+7j
    # sigma = 1.0
    # gamma = 10.0            # optional override of the derived constant

    [run]
    method = large-N          # large-N | small-t | product-exact | product-approx | free-particle
    omega_t_max = 20          # or t_max (seconds)
    samples = 2000
    grid = 512                # wigner grid resolution
    omega_t = 0, 0.5, 1       # wigner evaluation times
    temperature = 0.0         # optional low-temperature check (K)

plus an optional ``[validate]`` block for the oracle sweep.  Overrides take
the form ``section.key=value``.
"""

from __future__ import annotations

import configparser
import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .constants import HBAR, LIGHT_SPEED
from .curves import CURVE_METHODS
from .errors import ConfigError
from .model_core import CatState, MomentumSuperposition, RingConfig
from .presets import PRESETS

__all__ = ["ScenarioConfig", "SystemBlock", "StateBlock", "RunBlock", "ValidateBlock",
           "load_scenario", "parse_scenario", "scenario_from_preset"]


@dataclass(frozen=True)
class SystemBlock:
    n_particles: float = 0.0
    particle_mass: float = 0.0
    coupling: float = 0.0
    light_speed: float = LIGHT_SPEED
    hbar: float = HBAR


@dataclass(frozen=True)
class StateBlock:
    kind: str = ""
    p1: Optional[float] = None
    p2: Optional[float] = None
    v1: Optional[float] = None
    v2: Optional[float] = None
    alpha: Optional[complex] = None
    beta: Optional[complex] = None
    sigma: Optional[float] = None
    gamma: Optional[float] = None


@dataclass(frozen=True)
class RunBlock:
    method: str = "large-N"
    t_max: Optional[float] = None
    omega_t_max: Optional[float] = None
    samples: int = 2000
    grid: int = 512
    omega_t: tuple[float, ...] = (0.0,)
    temperature: Optional[float] = None


@dataclass(frozen=True)
class ValidateBlock:
    delta_max: float = 0.02
    points_delta: int = 4
    points_time: int = 8
    omega_k_t_max: float = 4.0 * math.pi
    cutoff: int = 64
    tolerance: float = 1e-6
    mode_index: int = 1


def _complex_value(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex value {text!r} (use python form, e.g. 5+3j)") from exc


def _float_tuple(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"cannot parse float list {text!r}") from exc


_CASTERS = {
    ("system", "n_particles"): float,
    ("system", "particle_mass"): float,
    ("system", "coupling"): float,
    ("system", "light_speed"): float,
    ("system", "hbar"): float,
    ("state", "kind"): str,
    ("state", "p1"): float,
    ("state", "p2"): float,
    ("state", "v1"): float,
    ("state", "v2"): float,
    ("state", "alpha"): _complex_value,
    ("state", "beta"): _complex_value,
    ("state", "sigma"): float,
    ("state", "gamma"): float,
    ("run", "method"): str,
    ("run", "t_max"): float,
    ("run", "omega_t_max"): float,
    ("run", "samples"): int,
    ("run", "grid"): int,
    ("run", "omega_t"): _float_tuple,
    ("run", "temperature"): float,
    ("validate", "delta_max"): float,
    ("validate", "points_delta"): int,
    ("validate", "points_time"): int,
    ("validate", "omega_k_t_max"): float,
    ("validate", "cutoff"): int,
    ("validate", "tolerance"): float,
    ("validate", "mode_index"): int,
}


@dataclass(frozen=True)
class ScenarioConfig:
    system: SystemBlock = field(default_factory=SystemBlock)
    state: StateBlock = field(default_factory=StateBlock)
    run: RunBlock = field(default_factory=RunBlock)
    validate: ValidateBlock = field(default_factory=ValidateBlock)
    preset: Optional[str] = None

    # -- constructors -----------------------------------------------------

    def check(self) -> "ScenarioConfig":
        st = self.state
        if st.kind not in ("momentum-superposition", "cat"):
            raise ConfigError(f"state.kind must be momentum-superposition or cat, got {st.kind!r}")
        has_p = st.p1 is not None or st.p2 is not None
        has_v = st.v1 is not None or st.v2 is not None
        if st.kind == "momentum-superposition":
            if has_p and has_v:
                raise ConfigError("give momenta (p1, p2) or velocities (v1, v2), not both")
            if has_p and (st.p1 is None or st.p2 is None):
                raise ConfigError("both p1 and p2 are required")
            if has_v and (st.v1 is None or st.v2 is None):
                raise ConfigError("both v1 and v2 are required")
            if not has_p and not has_v:
                raise ConfigError("momentum-superposition needs p1/p2 or v1/v2")
        else:
            if st.alpha is None or st.beta is None or st.sigma is None:
                raise ConfigError("cat state needs alpha, beta and sigma")
        if self.run.method not in CURVE_METHODS:
            raise ConfigError(f"run.method must be one of {CURVE_METHODS}, got {self.run.method!r}")
        if self.run.samples < 0:
            raise ConfigError("run.samples must be >= 0")
        if self.run.grid < 16:
            raise ConfigError("run.grid must be >= 16")
        # Constructing the ring validates positivity of the physical inputs.
        self.ring_config()
        return self

    def ring_config(self) -> RingConfig:
        n = self.system.n_particles
        if isinstance(n, float) and n.is_integer() and abs(n) < 2**53:
            n = int(n)
        return RingConfig(
            n_particles=n,
            particle_mass=self.system.particle_mass,
            coupling=self.system.coupling,
            light_speed=self.system.light_speed,
            hbar=self.system.hbar,
        )

    def momentum_state(self) -> MomentumSuperposition:
        st = self.state
        if st.kind != "momentum-superposition":
            raise ConfigError(f"state.kind is {st.kind!r}, not momentum-superposition")
        if st.p1 is not None:
            return MomentumSuperposition(p1=st.p1, p2=st.p2)
        return MomentumSuperposition.from_velocities(st.v1, st.v2, self.ring_config())

    def cat_state(self) -> CatState:
        st = self.state
        if st.kind != "cat":
            raise ConfigError(f"state.kind is {st.kind!r}, not cat")
        return CatState(alpha=st.alpha, beta=st.beta, sigma=st.sigma)

    # -- provenance --------------------------------------------------------

    def to_dict(self) -> dict:
        def scrub(value):
            if isinstance(value, complex):
                return repr(value)
            if isinstance(value, tuple):
                return list(value)
            if isinstance(value, float) and not math.isfinite(value):
                return repr(value)
            return value

        out: dict = {"preset": self.preset}
        for name in ("system", "state", "run", "validate"):
            block = getattr(self, name)
            out[name] = {key: scrub(val) for key, val in vars(block).items()}
        return out

    def sha(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:12]


def _apply(sections: dict[str, dict], section: str, key: str, raw: str) -> None:
    caster = _CASTERS.get((section, key))
    if caster is None:
        raise ConfigError(f"unknown configuration key [{section}] {key}")
    sections.setdefault(section, {})[key] = caster(raw)


def parse_scenario(
    text: str = "",
    overrides: Sequence[str] = (),
    base: Optional[dict] = None,
    preset: Optional[str] = None,
) -> ScenarioConfig:
    """Build a ScenarioConfig from INI text plus ``section.key=value`` overrides."""
    sections: dict[str, dict] = {}
    if base:
        for name, block in base.items():
            sections[name] = dict(block)
    if text:
        cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(f"bad configuration file: {exc}") from exc
        for section in cp.sections():
            for key, raw in cp.items(section):
                _apply(sections, section, key, raw)
    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"override must look like section.key=value, got {item!r}")
        target, raw = item.split("=", 1)
        section, key = target.split(".", 1)
        _apply(sections, section.strip(), key.strip(), raw.strip())

    def coerce(name, cls):
        data = sections.get(name, {})
        known = {f for f in cls.__dataclass_fields__}
        bad = set(data) - known
        if bad:
            raise ConfigError(f"unknown keys in [{name}]: {sorted(bad)}")
        return cls(**data)

    cfg = ScenarioConfig(
        system=coerce("system", SystemBlock),
        state=coerce("state", StateBlock),
        run=coerce("run", RunBlock),
        validate=coerce("validate", ValidateBlock),
        preset=preset,
    )
    return cfg.check()


def load_scenario(path: Optional[str], overrides: Sequence[str] = ()) -> ScenarioConfig:
    text = ""
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_scenario(text=text, overrides=overrides)


def scenario_from_preset(name: str, overrides: Sequence[str] = ()) -> ScenarioConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    return parse_scenario(overrides=overrides, base=PRESETS[name], preset=name)
