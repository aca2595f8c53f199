"""Construction specs: TOML or JSON files, validated and normalized to exact data.

Rationals are written as strings ("p/q", or "p/q+r*sqrt(n)" for matrix
entries) so that nothing passes through floating point. The canonical JSON
mirror of a spec (sorted keys, compact separators) is what gets hashed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .exact import ExactComplex, ExactMatrix, as_fraction, format_scalar, parse_scalar, qf_sign

MODES = ("false-elliptic", "elliptic", "raw-kuga")
DEFAULT_TAUS = (("0", "1"), ("1", "1"), ("1/2", "3/2"))


class SpecError(ValueError):
    """Malformed or invalid construction spec (CLI exit code 2)."""


def load_schema(name: str) -> dict:
    return json.loads(resources.files("quatkuga").joinpath("schemas", name).read_text("utf-8"))


def tau_label(tau: ExactComplex) -> str:
    return f"{format_scalar(tau.re)}+{format_scalar(tau.im)}i"


def _rational(x, where: str) -> Fraction:
    try:
        return as_fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecError(f"{where}: malformed rational {x!r}") from exc


def _scalar(x, where: str):
    try:
        return parse_scalar(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecError(f"{where}: malformed scalar {x!r}") from exc


def _matrix(rows, where: str) -> ExactMatrix:
    try:
        return ExactMatrix([[_scalar(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)]
                            for i, r in enumerate(rows)])
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(f"{where}: {exc}") from exc


def parse_tau(re, im, where: str = "tau") -> ExactComplex:
    tau = ExactComplex(_scalar(re, f"{where}.re"), _scalar(im, f"{where}.im"))
    if qf_sign(tau.im) != 1:
        raise SpecError(f"{where}: imaginary part must be positive, got {im!r}")
    return tau


def parse_tau_flag(text: str) -> ExactComplex:
    """``"re,im"`` as given on the command line."""
    parts = text.split(",")
    if len(parts) != 2:
        raise SpecError(f"--tau expects 're,im', got {text!r}")
    return parse_tau(parts[0].strip(), parts[1].strip(), f"--tau {text}")


@dataclass(frozen=True)
class ConstructionSpec:
    mode: str
    a: Fraction | None = None
    b: Fraction | None = None
    order_basis: tuple[tuple[Fraction, ...], ...] = ()
    generators: tuple[tuple[Fraction, ...], ...] = ()
    congruence_level: int = 1
    taus: tuple[ExactComplex, ...] = ()
    scale: int | str = "auto"
    copies: int = 1
    word_ball: int = 4
    level: int | None = None
    S_override: ExactMatrix | None = None
    rho: tuple[ExactMatrix, ...] = ()
    lattice: tuple[ExactMatrix, ...] = ()
    S: ExactMatrix | None = None
    raw: dict = field(default_factory=dict, compare=False, hash=False)

    def with_overrides(self, taus=None, copies=None, word_ball=None) -> "ConstructionSpec":
        raw = json.loads(json.dumps(self.raw))
        changes = {}
        if taus:
            changes["taus"] = tuple(taus)
            raw["tau"] = [{"re": format_scalar(t.re), "im": format_scalar(t.im)} for t in taus]
        if copies is not None:
            if copies < 1:
                raise SpecError("copies must be >= 1")
            changes["copies"] = copies
            raw["copies"] = copies
        if word_ball is not None:
            if word_ball < 0:
                raise SpecError("word ball radius must be >= 0")
            changes["word_ball"] = word_ball
            raw["word_ball"] = word_ball
        return replace(self, raw=raw, **changes)

    def canonical_json(self) -> str:
        return json.dumps(self.raw, sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    def digest(self) -> str:
        return "sha256:" + hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


def read_spec_file(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_bytes()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        if path.suffix == ".json":
            return json.loads(text.decode("utf-8"))
        return tomllib.loads(text.decode("utf-8"))
    except (json.JSONDecodeError, tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise SpecError(f"{path}: {exc}") from exc


def parse_spec(raw: dict) -> ConstructionSpec:
    """Validate against the spec schema, then convert every field exactly."""
    try:
        jsonschema.validate(raw, load_schema("spec.schema.json"))
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SpecError(f"{loc}: {exc.message}") from exc

    mode = raw["mode"]
    taus = tuple(parse_tau(t["re"], t["im"], f"tau[{k}]") for k, t in enumerate(raw.get("tau", [])))
    if not taus:
        taus = tuple(parse_tau(re, im) for re, im in DEFAULT_TAUS)
    kw = dict(mode=mode, taus=taus, copies=raw.get("copies", 1),
              word_ball=raw.get("word_ball", 4), raw=raw)
    if "S_override" in raw:
        kw["S_override"] = _matrix(raw["S_override"], "S_override")

    if mode == "elliptic":
        kw["level"] = raw["level"]
        return ConstructionSpec(**kw)

    alg = raw["algebra"]
    a, b = _rational(alg["a"], "algebra.a"), _rational(alg["b"], "algebra.b")
    if a == 0 or b == 0:
        raise SpecError("algebra parameters must be nonzero")
    if a < 0:
        raise SpecError("algebra.a must be positive so that x embeds as a real diagonal matrix")
    gens = tuple(tuple(_rational(c, f"generators[{k}]") for c in g)
                 for k, g in enumerate(raw["generators"]))
    kw.update(a=a, b=b, generators=gens, congruence_level=raw.get("congruence_level", 1))

    if mode == "false-elliptic":
        basis = tuple(tuple(_rational(c, f"order.basis[{k}]") for c in r)
                      for k, r in enumerate(raw["order"]["basis"]))
        scale = raw.get("scale", "auto")
        return ConstructionSpec(order_basis=basis, scale=scale, **kw)

    g = raw["g"]
    rho = tuple(_matrix(m, f"rho[{k}]") for k, m in enumerate(raw["rho"]))
    lattice = tuple(_matrix(m, f"lattice[{k}]") for k, m in enumerate(raw["lattice"]))
    S = _matrix(raw["S"], "S")
    if len(rho) != len(gens):
        raise SpecError("need one rho matrix per generator")
    for name, ms, shape in (("rho", rho, (g, g)), ("lattice", lattice, (g, 2)), ("S", (S,), (g, g))):
        if any(m.shape != shape for m in ms):
            raise SpecError(f"{name} entries must be {shape[0]}x{shape[1]}")
    return ConstructionSpec(rho=rho, lattice=lattice, S=S, **kw)


def load_spec(path: str | Path) -> ConstructionSpec:
    return parse_spec(read_spec_file(path))
