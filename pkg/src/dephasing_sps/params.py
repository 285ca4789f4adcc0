"""Physical parameters of one emitter-cavity system and unit handling.

Every quantity is an energy in µeV with ħ = 1, so rates and angular
frequencies share that unit and times are measured in ħ/µeV.  Conversion to
ns⁻¹ is provided for display only.
"""

from __future__ import annotations

import dataclasses
import math
import numbers
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import NegativeValue, NonFinite, NonPositiveRate, OutOfRange, ValidationError

HBAR_UEV_NS = 0.6582119569  # µeV·ns

MAX_RATE = 1e7  # µeV; anything bigger is almost certainly a unit mistake

UNIT_FACTORS = {"ueV": 1.0, "µeV": 1.0, "meV": 1e3}


@dataclass(frozen=True)
class SystemParams:
    """Emitter-cavity constants, all in µeV.

    ``omega0`` defaults to 0 so that ``omega_cav`` is the detuning. Instances
    are validated on construction.
    """

    g: float
    kappa: float
    gamma: float
    gamma_star: float = 0.0
    omega0: float = 0.0
    omega_cav: float = 0.0

    def __post_init__(self):
        validate(self)
        for f in dataclasses.fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))

    @classmethod
    def from_detuning(cls, g, kappa, gamma, gamma_star=0.0, delta=0.0, omega0=0.0):
        return cls(g, kappa, gamma, gamma_star, omega0, omega0 + delta)

    @property
    def delta(self) -> float:
        """Cavity-emitter detuning ``omega_cav - omega0``."""
        return self.omega_cav - self.omega0

    @property
    def widths(self) -> DerivedWidths:
        return DerivedWidths.of(self)

    def replace(self, **changes) -> SystemParams:
        """Copy with fields changed; ``delta`` moves the cavity, keeping ``omega0``."""
        if "delta" in changes:
            delta = changes.pop("delta")
            omega0 = changes.get("omega0", self.omega0)
            changes["omega_cav"] = omega0 + delta
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["delta"] = self.delta
        return d


@dataclass(frozen=True)
class DerivedWidths:
    gamma_tot: float  # emitter linewidth γ + γ*
    gamma_t: float  # coherence decay (γ + γ* + κ)/2

    @classmethod
    def of(cls, p: SystemParams) -> DerivedWidths:
        return cls(p.gamma + p.gamma_star, (p.gamma + p.gamma_star + p.kappa) / 2)


PRESETS = {
    # quasi-resonantly pumped micropillar-type system
    "press": dict(g=35.0, kappa=85.0, gamma=1.0),
    # photonic-crystal system with larger coupling
    "hennessy": dict(g=76.0, kappa=100.0, gamma=1.0),
}


def preset(name: str, **overrides) -> SystemParams:
    try:
        base = dict(PRESETS[name.lower()])
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    base.update(overrides)
    delta = base.pop("delta", None)
    p = SystemParams(**base)
    return p if delta is None else p.replace(delta=delta)


def validate(params: SystemParams) -> SystemParams:
    """Check all invariants and return ``params`` unchanged."""
    for name in ("g", "kappa", "gamma", "gamma_star", "omega0", "omega_cav"):
        value = getattr(params, name)
        if not isinstance(value, numbers.Real) or isinstance(value, bool):
            raise ValidationError(f"{name} must be a real number, got {value!r}")
        if not math.isfinite(value):
            raise NonFinite(f"{name} is not finite: {value!r}")
    for name in ("kappa", "gamma"):
        if getattr(params, name) <= 0:
            raise NonPositiveRate(f"{name} must be > 0, got {getattr(params, name)!r}")
    for name in ("g", "gamma_star"):
        if getattr(params, name) < 0:
            raise NegativeValue(f"{name} must be >= 0, got {getattr(params, name)!r}")
    for name in ("g", "kappa", "gamma", "gamma_star"):
        if getattr(params, name) > MAX_RATE:
            raise OutOfRange(f"{name}={getattr(params, name)!r} µeV exceeds {MAX_RATE:g} µeV")
    return params


def energy_to_inverse_time(e: float) -> float:
    """µeV -> ns⁻¹."""
    if not math.isfinite(e):
        raise NonFinite(f"energy is not finite: {e!r}")
    return e / HBAR_UEV_NS


def inverse_time_to_energy(rate: float) -> float:
    """ns⁻¹ -> µeV."""
    if not math.isfinite(rate):
        raise NonFinite(f"rate is not finite: {rate!r}")
    return rate * HBAR_UEV_NS


_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zA-Zµ]*)\s*$")


def parse_energy(text: str) -> float:
    """Parse ``"35"``, ``"500ueV"`` or ``"0.5 meV"`` into µeV."""
    m = _QUANTITY.match(str(text))
    if not m:
        raise ValidationError(f"cannot parse energy {text!r}")
    number, unit = m.groups()
    unit = unit or "ueV"
    if unit not in UNIT_FACTORS:
        raise ValidationError(f"unknown unit {unit!r} in {text!r}; use ueV or meV")
    value = float(number) * UNIT_FACTORS[unit]
    if not math.isfinite(value):
        raise NonFinite(f"energy is not finite: {text!r}")
    return value


CONFIG_KEYS = ("g", "kappa", "gamma", "gamma_star", "delta", "omega0", "omega_cav")


def parse_config(text: str) -> dict[str, float]:
    """Parse flat ``key = value`` lines. ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ValidationError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ValidationError(f"line {lineno}: duplicate key {key!r}")
        values[key] = parse_energy(value)
    if "delta" in values and "omega_cav" in values:
        raise ValidationError("give either delta or omega_cav, not both")
    return values


def load_config(path: str | Path) -> dict[str, float]:
    return parse_config(Path(path).read_text())


def params_from_mapping(values: dict[str, float]) -> SystemParams:
    """Build params from config-style keys (``delta`` or ``omega0``/``omega_cav``)."""
    values = dict(values)
    missing = [k for k in ("g", "kappa", "gamma") if k not in values]
    if missing:
        raise ValidationError(f"missing parameters: {', '.join(missing)}")
    delta = values.pop("delta", None)
    if delta is not None:
        omega0 = values.get("omega0", 0.0)
        values["omega_cav"] = omega0 + delta
    return SystemParams(**values)
