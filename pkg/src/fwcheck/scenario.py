"""Scenario files: strict parsing, validation, serialization and case building.

A scenario is a JSON object::

    {
      "name": "free-1d",
      "case": "free",                  # free | magnetic | electric | susy | gravity
      "m": 1.0, "e": 0.0,
      "lattice": {"dim": 1, "N": 16, "L": 6.283185307179586},
      "fields": {...},                 # per case, see FIELD_KEYS
      "transforms": ["fw", {"kind": "ek", "expect_fw": false}],
      "tolerances": {"block_tol": 1e-10},
      "states_per_branch": 8,
      "full_spectrum": false,
      "sweep": {...}                   # optional amplitude sweep for emit_tables
    }

Scalar fields use the analytic families ``constant`` (``value``), ``cosine`` and
``sine`` (``offset + amplitude * f(2 pi k x_axis / L)``) and ``oscillator``
(the periodic Dirac-oscillator surrogate, ``frequency``).  Vector fields are
lists with one scalar family per lattice axis.  The magnetic case takes
``B`` as ``{"family": "sine", "amplitude": B0, "wavenumber": k}`` meaning
``B_z = B0 sin(2 pi k x / L)``; each positive lobe must carry an integer number
of flux quanta, ``e B0 L^2 / (pi k) = 2 pi n``.
"""

import json
import math
from importlib import resources
from dataclasses import dataclass, field, replace

import numpy as np

from . import lattice as lat
from .hamiltonians import KINDS, ConfigurationError, HamiltonianCase, oscillator_surrogate
from .verify import Tolerances

TOP_KEYS = {"name", "case", "m", "e", "lattice", "fields", "transforms", "tolerances",
            "states_per_branch", "full_spectrum", "sweep"}
LATTICE_KEYS = {"dim", "N", "L"}
FIELD_KEYS = {
    "free": {},
    "electric": {"A0": "scalar"},
    "magnetic": {"B": "flux"},
    "susy": {"A": "vector", "E": "vector", "A5": "scalar", "E5": "scalar"},
    "gravity": {"V": "scalar", "W": "scalar"},
}
FAMILY_KEYS = {
    "constant": {"family", "value"},
    "cosine": {"family", "amplitude", "wavenumber", "axis", "offset"},
    "sine": {"family", "amplitude", "wavenumber", "axis", "offset"},
    "oscillator": {"family", "frequency", "axis"},
}
TRANSFORM_KINDS = ("fw", "eriksen", "ek", "ek_corrected", "su2_plus", "su2_minus",
                   "su2_minus_literal", "closed_form", "fw_perturbative", "ek_perturbative")
TRANSFORM_KEYS = {"kind", "expect_fw", "tolerances"}
SWEEP_KEYS = {"field", "amplitudes", "transform", "measure", "state", "subtract_free"}
SWEEP_MEASURES = ("lower", "match", "fidelity", "reconstruction")


class ScenarioError(ConfigurationError):
    """Invalid scenario; ``errors`` lists ``(path, message)`` pairs."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(f"{p}: {m}" for p, m in self.errors))


@dataclass(frozen=True)
class FieldSpec:
    family: str
    value: float = 0.0
    amplitude: float = 0.0
    wavenumber: int = 1
    axis: int = 0
    offset: float = 0.0
    frequency: float = 1.0

    def as_dict(self):
        keys = FAMILY_KEYS[self.family]
        return {k: getattr(self, k) for k in ("family", "value", "amplitude", "wavenumber",
                                              "axis", "offset", "frequency") if k in keys}

    def samples(self, spec):
        """Field values at the lattice sites."""
        if self.family == "constant":
            return np.full(spec.n_sites, float(self.value))
        if self.family == "oscillator":
            return oscillator_surrogate(spec, self.frequency)[:, self.axis]
        x = spec.positions[:, self.axis]
        arg = 2 * np.pi * self.wavenumber * x / spec.box_length
        wave = np.cos(arg) if self.family == "cosine" else np.sin(arg)
        return self.offset + self.amplitude * wave


@dataclass(frozen=True)
class TransformSpec:
    kind: str
    expect_fw: object = None  # True, False or None (not checked)
    tolerances: dict = field(default_factory=dict)

    def as_dict(self):
        out = {"kind": self.kind}
        if self.expect_fw is not None:
            out["expect_fw"] = self.expect_fw
        if self.tolerances:
            out["tolerances"] = dict(self.tolerances)
        return out


@dataclass(frozen=True)
class SweepSpec:
    """Amplitude sweep: ``field``'s amplitude takes each value in ``amplitudes``."""

    field: str
    amplitudes: tuple
    transform: str = "ek_perturbative"
    measure: str = "match"
    state: int = 0
    subtract_free: bool = False

    def as_dict(self):
        return {"field": self.field, "amplitudes": list(self.amplitudes), "transform": self.transform,
                "measure": self.measure, "state": self.state, "subtract_free": self.subtract_free}


@dataclass(frozen=True)
class Scenario:
    name: str
    case: str
    m: float
    e: float
    lattice: lat.LatticeSpec
    fields: dict
    transforms: tuple
    tolerances: Tolerances
    states_per_branch: int = 8
    full_spectrum: bool = False
    sweep: object = None

    def field_samples(self, overrides=None):
        """Sampled fields keyed as :class:`HamiltonianCase` expects them."""
        fields = dict(self.fields)
        fields.update(overrides or {})
        spec = self.lattice
        out = {}
        for key, value in fields.items():
            if key == "B":
                out["A"] = landau_potential(value, spec)
            elif isinstance(value, tuple):
                out[key] = np.stack([f.samples(spec) for f in value], axis=-1)
            else:
                out[key] = value.samples(spec)
        return out

    def build_case(self, overrides=None):
        return HamiltonianCase(self.case, self.m, self.lattice, self.e, self.field_samples(overrides))

    def with_field(self, name, spec):
        fields = dict(self.fields)
        fields[name] = spec
        return replace(self, fields=fields)


def landau_potential(flux, spec):
    """Vector potential ``A = (0, -(B0/q) cos(q x))`` whose curl is ``B0 sin(q x)``."""
    q = 2 * np.pi * flux.wavenumber / spec.box_length
    A = np.zeros((spec.n_sites, spec.dim))
    A[:, 1] = -(flux.amplitude / q) * np.cos(q * spec.positions[:, 0])
    return A


def flux_quanta(flux, e, L):
    """Flux through one positive lobe of ``B0 sin(2 pi k x / L)`` in units of ``2 pi``."""
    return e * flux.amplitude * L * L / (math.pi * flux.wavenumber) / (2 * math.pi)


# -- parsing ---------------------------------------------------------------------------

def _number(value, path, errors, positive=False, integer=False):
    ok = isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)
    if integer:
        ok = ok and float(value).is_integer()
    if not ok:
        errors.append((path, f"expected {'an integer' if integer else 'a finite number'}, got {value!r}"))
        return None
    if positive and not value > 0:
        errors.append((path, f"must be positive, got {value!r}"))
        return None
    return int(value) if integer else float(value)


def _strict(obj, allowed, path, errors):
    if not isinstance(obj, dict):
        errors.append((path, f"expected an object, got {type(obj).__name__}"))
        return False
    for key in sorted(set(obj) - set(allowed)):
        errors.append((f"{path}.{key}", "unknown key"))
    return True


def _parse_family(obj, path, errors, dim, N):
    if not _strict(obj, set().union(*FAMILY_KEYS.values()), path, errors):
        return None
    family = obj.get("family")
    if family not in FAMILY_KEYS:
        errors.append((f"{path}.family", f"unknown family {family!r}; expected one of {sorted(FAMILY_KEYS)}"))
        return None
    for key in sorted(set(obj) - FAMILY_KEYS[family]):
        errors.append((f"{path}.{key}", f"not a parameter of the {family} family"))
    kwargs = {"family": family}
    for key in ("value", "amplitude", "offset", "frequency"):
        if key in obj:
            kwargs[key] = _number(obj[key], f"{path}.{key}", errors)
    for key in ("wavenumber", "axis"):
        if key in obj:
            kwargs[key] = _number(obj[key], f"{path}.{key}", errors, integer=True)
    if None in kwargs.values():
        return None
    if family == "constant" and "value" not in obj:
        errors.append((f"{path}.value", "required"))
    if family in ("cosine", "sine") and "amplitude" not in obj:
        errors.append((f"{path}.amplitude", "required"))
    spec = FieldSpec(**kwargs)
    if not 0 <= spec.axis < dim:
        errors.append((f"{path}.axis", f"axis {spec.axis} out of range for a {dim}-D lattice"))
    if family in ("cosine", "sine"):
        if spec.wavenumber < 1:
            errors.append((f"{path}.wavenumber", f"must be >= 1, got {spec.wavenumber}"))
        elif spec.wavenumber > N // 4:
            errors.append((f"{path}.wavenumber",
                           f"wavenumber {spec.wavenumber} exceeds the band limit N/4 = {N // 4}"))
    return spec


def _parse_lattice(obj, errors):
    if not _strict(obj, LATTICE_KEYS, "lattice", errors):
        return None
    missing = LATTICE_KEYS - set(obj)
    for key in sorted(missing):
        errors.append((f"lattice.{key}", "required"))
    if missing:
        return None
    dim = _number(obj["dim"], "lattice.dim", errors, integer=True)
    N = _number(obj["N"], "lattice.N", errors, integer=True)
    L = _number(obj["L"], "lattice.L", errors, positive=True)
    if None in (dim, N, L):
        return None
    try:
        return lat.LatticeSpec(dim, N, L)
    except ValueError as exc:
        errors.append(("lattice", str(exc)))
        return None


def _parse_fields(obj, case, spec, e, errors):
    allowed = FIELD_KEYS[case]
    if obj is None:
        obj = {}
    if not _strict(obj, allowed, "fields", errors):
        return {}
    fields = {}
    for key, shape in allowed.items():
        path = f"fields.{key}"
        if key not in obj:
            if case != "susy":
                errors.append((path, "required"))
            continue
        value = obj[key]
        if shape == "vector":
            if not isinstance(value, list) or len(value) != spec.dim:
                errors.append((path, f"expected a list of {spec.dim} field families"))
                continue
            parts = tuple(_parse_family(v, f"{path}[{i}]", errors, spec.dim, spec.sites_per_axis)
                          for i, v in enumerate(value))
            if None not in parts:
                fields[key] = parts
        else:
            parsed = _parse_family(value, path, errors, spec.dim, spec.sites_per_axis)
            if parsed is not None:
                fields[key] = parsed
    if case == "gravity":
        for key in ("V", "W"):
            if key in fields:
                vals = fields[key].samples(spec)
                if np.any(vals <= 0):
                    errors.append((f"fields.{key}", f"metric function must be positive; minimum is {vals.min():.6g}"))
    if case == "magnetic" and "B" in fields:
        _check_flux(fields["B"], e, spec, errors)
    return fields


def _check_flux(flux, e, spec, errors):
    if flux.family != "sine" or flux.axis != 0 or flux.offset != 0.0:
        errors.append(("fields.B", "magnetic field must be a zero-offset sine along axis 0"))
        return
    if spec.dim < 2:
        errors.append(("lattice.dim", "the magnetic case needs a 2-D or 3-D lattice"))
        return
    if e == 0:
        errors.append(("e", "the magnetic case needs a nonzero charge"))
        return
    quanta = flux_quanta(flux, e, spec.box_length)
    if abs(quanta - round(quanta)) > 1e-9 or round(quanta) == 0:
        n = max(1, round(abs(quanta)))
        nearest = math.copysign(2 * math.pi * math.pi * n * flux.wavenumber / (e * spec.box_length ** 2),
                                quanta or 1.0)
        errors.append(("fields.B.amplitude",
                       f"flux per lobe is {quanta:.6g} quanta (must be a nonzero integer); "
                       f"nearest valid amplitude is B0 = {nearest!r}"))


def _parse_tolerances(obj, path, errors):
    if obj is None:
        return {}
    if not _strict(obj, set(Tolerances().as_dict()), path, errors):
        return {}
    out = {}
    for key, value in obj.items():
        if key in Tolerances().as_dict():
            v = _number(value, f"{path}.{key}", errors)
            if v is not None and v < 0:
                errors.append((f"{path}.{key}", f"must be non-negative, got {v!r}"))
            elif v is not None:
                out[key] = v
    return out


def _parse_transforms(obj, case, errors):
    if not isinstance(obj, list):
        errors.append(("transforms", "expected a list"))
        return ()
    out = []
    for i, entry in enumerate(obj):
        path = f"transforms[{i}]"
        if isinstance(entry, str):
            entry = {"kind": entry}
        if not _strict(entry, TRANSFORM_KEYS, path, errors):
            continue
        kind = entry.get("kind")
        if kind not in TRANSFORM_KINDS:
            errors.append((f"{path}.kind", f"unknown transform {kind!r}; expected one of {list(TRANSFORM_KINDS)}"))
            continue
        expect = entry.get("expect_fw")
        if expect is not None and not isinstance(expect, bool):
            errors.append((f"{path}.expect_fw", f"expected true or false, got {expect!r}"))
            continue
        tol = _parse_tolerances(entry.get("tolerances"), f"{path}.tolerances", errors)
        out.append(TransformSpec(kind, expect, tol))
    return tuple(out)


def _parse_sweep(obj, fields, errors):
    if obj is None:
        return None
    if not _strict(obj, SWEEP_KEYS, "sweep", errors):
        return None
    name = obj.get("field")
    if name not in fields or isinstance(fields[name], tuple) or fields[name].family not in ("cosine", "sine"):
        errors.append(("sweep.field", f"must name a cosine or sine scalar field of the scenario, got {name!r}"))
        return None
    amps = obj.get("amplitudes")
    if not isinstance(amps, list) or not amps:
        errors.append(("sweep.amplitudes", "expected a non-empty list of numbers"))
        return None
    amps = tuple(_number(a, f"sweep.amplitudes[{i}]", errors) for i, a in enumerate(amps))
    transform = obj.get("transform", "ek_perturbative")
    if transform not in TRANSFORM_KINDS and transform != "none":
        errors.append(("sweep.transform", f"unknown transform {transform!r}"))
    measure = obj.get("measure", "match")
    if measure not in SWEEP_MEASURES:
        errors.append(("sweep.measure", f"expected one of {list(SWEEP_MEASURES)}, got {measure!r}"))
    state = _number(obj.get("state", 0), "sweep.state", errors, integer=True)
    subtract = obj.get("subtract_free", False)
    if not isinstance(subtract, bool):
        errors.append(("sweep.subtract_free", "expected true or false"))
    if None in amps or state is None:
        return None
    return SweepSpec(name, amps, transform, measure, state, bool(subtract))


def parse_scenario(text):
    """Parse and validate scenario JSON text; raise :class:`ScenarioError` listing every problem."""
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ScenarioError([("<document>", f"not valid JSON: {exc}")]) from None
    errors = []
    if not _strict(obj, TOP_KEYS, "<root>", errors):
        raise ScenarioError(errors)
    for key in ("case", "m", "lattice", "transforms"):
        if key not in obj:
            errors.append((key, "required"))
    case = obj.get("case")
    if "case" in obj and case not in KINDS:
        errors.append(("case", f"unknown case {case!r}; expected one of {list(KINDS)}"))
    m = _number(obj["m"], "m", errors, positive=True) if "m" in obj else None
    e = _number(obj.get("e", 0.0), "e", errors)
    spec = _parse_lattice(obj["lattice"], errors) if "lattice" in obj else None
    name = obj.get("name", "scenario")
    if not isinstance(name, str) or not name:
        errors.append(("name", "expected a non-empty string"))
    fields = {}
    if case in KINDS and spec is not None and e is not None:
        fields = _parse_fields(obj.get("fields"), case, spec, e, errors)
    transforms = _parse_transforms(obj["transforms"], case, errors) if "transforms" in obj else ()
    tol_over = _parse_tolerances(obj.get("tolerances"), "tolerances", errors)
    per_branch = _number(obj.get("states_per_branch", 8), "states_per_branch", errors, integer=True)
    if per_branch is not None and per_branch < 1:
        errors.append(("states_per_branch", f"must be >= 1, got {per_branch}"))
    full = obj.get("full_spectrum", False)
    if not isinstance(full, bool):
        errors.append(("full_spectrum", "expected true or false"))
    sweep = _parse_sweep(obj.get("sweep"), fields, errors)
    if errors:
        raise ScenarioError(errors)
    return Scenario(name, case, m, e, spec, fields, transforms, Tolerances().with_overrides(**tol_over),
                    per_branch, full, sweep)


def scenario_to_dict(s):
    fields = {}
    for key, value in s.fields.items():
        fields[key] = [f.as_dict() for f in value] if isinstance(value, tuple) else value.as_dict()
    out = {
        "name": s.name,
        "case": s.case,
        "m": s.m,
        "e": s.e,
        "lattice": {"dim": s.lattice.dim, "N": s.lattice.sites_per_axis, "L": s.lattice.box_length},
        "fields": fields,
        "transforms": [t.as_dict() for t in s.transforms],
        "tolerances": s.tolerances.as_dict(),
        "states_per_branch": s.states_per_branch,
        "full_spectrum": s.full_spectrum,
    }
    if s.sweep is not None:
        out["sweep"] = s.sweep.as_dict()
    return out


def serialize_scenario(s):
    return json.dumps(scenario_to_dict(s), indent=2) + "\n"


def load_scenario(path):
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


GOLDEN = ("free", "magnetic", "electric", "susy", "gravity")


def golden_scenario_path(name):
    """Path of a scenario file shipped with the package (see ``GOLDEN``)."""
    path = resources.files("fwcheck") / "scenarios" / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(f"no bundled scenario named {name!r}")
    return str(path)


__all__ = [
    "GOLDEN", "golden_scenario_path", "Scenario", "FieldSpec", "TransformSpec", "SweepSpec", "ScenarioError", "parse_scenario",
    "serialize_scenario", "scenario_to_dict", "load_scenario", "landau_potential", "flux_quanta",
    "TRANSFORM_KINDS",
]
