"""Field containers, gauge transformations, flux sectors, serialization.

The gauge field is stored non-compactly: a real link 1-form a (the
fluctuation around the flux background, units 1/length) plus an integer
antisymmetric flux matrix selecting the bundle sector. Gauge transforms
carry a periodic real angle zeta plus four winding integers; windings are
never baked into zeta, which keeps branch cuts out of the fields entirely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .lattice import PLANES, Lattice, d0

FORMAT_VERSION = 1


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def check_flux_matrix(flux) -> np.ndarray:
    """Validate and return the 4x4 antisymmetric integer flux matrix."""
    f = np.asarray(flux)
    _require(f.shape == (4, 4), f"flux must be 4x4, got {f.shape}")
    _require(
        not np.iscomplexobj(f) and np.all(f == np.round(f)),
        "flux entries must be integers",
    )
    f = f.astype(int)
    _require(np.array_equal(f, -f.T), "flux matrix must be antisymmetric")
    return f


@dataclass(frozen=True)
class GaugeField:
    """Fluctuation 1-form a plus the integer flux sector."""

    a: np.ndarray
    flux: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        _require(a.ndim == 5 and a.shape[-1] == 4, f"a must be sites x 4, got {a.shape}")
        _require(np.all(np.isfinite(a)), "gauge field must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "flux", check_flux_matrix(self.flux))


@dataclass(frozen=True)
class GaugeTransform:
    """g(x) = exp(i (zeta(x) + 2 pi sum_mu k_mu x_mu / N_mu))."""

    zeta: np.ndarray
    winding: tuple[int, int, int, int] = (0, 0, 0, 0)

    def __post_init__(self):
        z = np.asarray(self.zeta, dtype=float)
        _require(z.ndim == 4, f"zeta must be a site scalar field, got shape {z.shape}")
        _require(np.all(np.isfinite(z)), "zeta must be finite")
        k = tuple(int(v) for v in self.winding)
        _require(len(k) == 4, "winding needs four integers")
        object.__setattr__(self, "zeta", z)
        object.__setattr__(self, "winding", k)

    def inverse(self) -> "GaugeTransform":
        return GaugeTransform(-self.zeta, tuple(-k for k in self.winding))

    def compose(self, other: "GaugeTransform") -> "GaugeTransform":
        """Pointwise product of the two U(1) maps."""
        return GaugeTransform(
            self.zeta + other.zeta,
            tuple(a + b for a, b in zip(self.winding, other.winding)),
        )


@dataclass(frozen=True)
class Configuration:
    """A gauge field and a positive spinor field over one lattice.

    scalar_curvature is the coefficient field s(x) of the |phi|^2 term
    (units 1/length^2). seed records provenance when the configuration was
    randomly generated; it is carried through serialization untouched.
    """

    lattice: Lattice
    gauge: GaugeField
    phi: np.ndarray
    scalar_curvature: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        lat = self.lattice
        _require(
            self.gauge.a.shape == lat.dims + (4,),
            f"gauge field shape {self.gauge.a.shape} does not match lattice {lat.dims}",
        )
        phi = np.asarray(self.phi, dtype=complex)
        _require(
            phi.shape == lat.dims + (2,),
            f"spinor field must have shape {lat.dims + (2,)}, got {phi.shape}",
        )
        _require(np.all(np.isfinite(phi)), "spinor field must be finite")
        s = np.asarray(self.scalar_curvature, dtype=float)
        _require(
            s.shape == lat.dims,
            f"scalar curvature must have shape {lat.dims}, got {s.shape}",
        )
        _require(np.all(np.isfinite(s)), "scalar curvature must be finite")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "scalar_curvature", s)

    def replace(self, a=None, phi=None) -> "Configuration":
        """Copy with new field data; flux, s, and seed are carried over."""
        gauge = self.gauge if a is None else GaugeField(a, self.gauge.flux)
        return Configuration(
            self.lattice,
            gauge,
            self.phi if phi is None else phi,
            self.scalar_curvature,
            self.seed,
        )


def transform_angle(lat: Lattice, g: GaugeTransform) -> np.ndarray:
    """Unwrapped angle theta(x) = zeta(x) + 2 pi sum_mu k_mu x_mu / N_mu."""
    x = np.indices(lat.dims)
    theta = g.zeta.copy()
    for mu in range(4):
        if g.winding[mu]:
            theta += 2.0 * np.pi * g.winding[mu] * x[mu] / lat.dims[mu]
    return theta


def apply_gauge(g: GaugeTransform, cfg: Configuration) -> Configuration:
    """Gauge action: a += d theta, phi *= exp(-i theta), flux untouched.

    The winding part of theta is linear in x with a wrap discontinuity; its
    exact lattice differential is the constant 2 pi k_mu / (N_mu h) on
    direction mu, which is added directly so a stays smooth and periodic.
    """
    lat = cfg.lattice
    if g.zeta.shape != lat.dims:
        raise ValueError(
            f"transform on lattice {g.zeta.shape}, configuration on {lat.dims}"
        )
    a_new = cfg.gauge.a + d0(lat, g.zeta)
    for mu in range(4):
        if g.winding[mu]:
            a_new[..., mu] += 2.0 * np.pi * g.winding[mu] / (lat.dims[mu] * lat.spacing)
    phase = np.exp(-1j * transform_angle(lat, g))
    phi_new = phase[..., None] * cfg.phi
    return cfg.replace(a=a_new, phi=phi_new)


def build_flux_background(lat: Lattice, flux) -> np.ndarray:
    """Link angles for the determinant line in the given flux sector.

    For each plane (mu, nu) with n = flux[mu, nu] != 0 the plaquette holonomy
    angle is the constant 2 pi n / (N_mu N_nu), so the angles over a full
    coordinate plane sum to exactly 2 pi n. The real-valued curl of the
    returned angles equals that constant except at one corner plaquette per
    plane, where it differs by the invisible 2 pi n.
    """
    flux = check_flux_matrix(flux)
    theta = np.zeros(lat.dims + (4,))
    x = np.indices(lat.dims)
    for mu, nu in PLANES:
        n = flux[mu, nu]
        if n == 0:
            continue
        nmu, nnu = lat.dims[mu], lat.dims[nu]
        theta[..., nu] += (2.0 * np.pi * n / (nmu * nnu)) * x[mu]
        # repair the wrap column so interior plaquettes stay uniform
        wrap = x[mu] == nmu - 1
        theta[..., mu] -= np.where(wrap, (2.0 * np.pi * n / nnu) * x[nu], 0.0)
    return theta


def background_curvature(lat: Lattice, flux) -> np.ndarray:
    """Constant determinant-line curvature 2-form of the flux sector.

    Component on plane (mu, nu) is 2 pi n_{mu nu} / (N_mu N_nu h^2)
    everywhere; its h^2-weighted sum over a coordinate plane is 2 pi n.
    """
    flux = check_flux_matrix(flux)
    F = np.zeros(lat.dims + (6,))
    for i, (mu, nu) in enumerate(PLANES):
        n = flux[mu, nu]
        if n:
            F[..., i] = 2.0 * np.pi * n / (lat.dims[mu] * lat.dims[nu] * lat.spacing**2)
    return F


def random_configuration(
    lat: Lattice,
    seed: int,
    amplitudes,
    flux=None,
    scalar_curvature=None,
) -> Configuration:
    """Gaussian fields: a ~ amp_a * N(0,1) per link, phi with RMS amp_phi.

    Deterministic in seed. amplitudes is the pair (amp_a, amp_phi), both
    nonnegative; (0, 0) gives the zero configuration.
    """
    amp_a, amp_phi = (float(v) for v in amplitudes)
    if amp_a < 0 or amp_phi < 0:
        raise ValueError(f"amplitudes must be nonnegative, got {amplitudes}")
    rng = np.random.default_rng(seed)
    a = amp_a * rng.standard_normal(lat.dims + (4,))
    phi = (amp_phi / np.sqrt(2.0)) * (
        rng.standard_normal(lat.dims + (2,)) + 1j * rng.standard_normal(lat.dims + (2,))
    )
    if flux is None:
        flux = np.zeros((4, 4), dtype=int)
    if scalar_curvature is None:
        scalar_curvature = np.zeros(lat.dims)
    return Configuration(lat, GaugeField(a, flux), phi, scalar_curvature, seed=int(seed))


def _emit_json(obj, out: list):
    # json.dump cannot be told to print floats at full precision, so walk
    # the document by hand; 17 significant digits round-trip any double
    if isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (float, np.floating)):
        out.append(format(float(obj), ".16e"))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif obj is None:
        out.append("null")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for j, (key, val) in enumerate(obj.items()):
            if j:
                out.append(", ")
            out.append(json.dumps(str(key)) + ": ")
            _emit_json(val, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for j, val in enumerate(obj):
            if j:
                out.append(", ")
            _emit_json(val, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def _flatten_site_major(u: np.ndarray) -> list:
    """Flatten with x1 varying fastest across sites, components fastest within."""
    if u.ndim == 4:
        return [float(v) for v in u.transpose(3, 2, 1, 0).ravel()]
    return [float(v) for v in u.transpose(3, 2, 1, 0, 4).ravel()]


def _unflatten_site_major(vals, dims, ncomp: int) -> np.ndarray:
    n1, n2, n3, n4 = dims
    arr = np.asarray(vals, dtype=float)
    if ncomp == 0:
        expect = n1 * n2 * n3 * n4
        if arr.shape != (expect,):
            raise ValueError(f"expected {expect} values, got {arr.shape}")
        return arr.reshape(n4, n3, n2, n1).transpose(3, 2, 1, 0).copy()
    expect = n1 * n2 * n3 * n4 * ncomp
    if arr.shape != (expect,):
        raise ValueError(f"expected {expect} values, got {arr.shape}")
    return arr.reshape(n4, n3, n2, n1, ncomp).transpose(3, 2, 1, 0, 4).copy()


def save_configuration(cfg: Configuration, path):
    """Write a configuration as a single JSON document (format version 1)."""
    lat = cfg.lattice
    doc = {
        "version": FORMAT_VERSION,
        "dims": list(lat.dims),
        "spacing": lat.spacing,
        "flux": [[int(v) for v in row] for row in cfg.gauge.flux],
        "a": _flatten_site_major(cfg.gauge.a),
        "phi_re": _flatten_site_major(cfg.phi.real),
        "phi_im": _flatten_site_major(cfg.phi.imag),
        "s": _flatten_site_major(cfg.scalar_curvature),
        "seed": cfg.seed,
    }
    out: list = []
    _emit_json(doc, out)
    with open(path, "w") as fh:
        fh.write("".join(out))
        fh.write("\n")


def load_configuration(path) -> Configuration:
    """Read a configuration written by save_configuration; strict validation."""
    with open(path) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: top level must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise ValueError(f"{path}: format version {version!r}, expected {FORMAT_VERSION}")
    missing = {"dims", "spacing", "flux", "a", "phi_re", "phi_im", "s"} - set(doc)
    if missing:
        raise ValueError(f"{path}: missing keys {sorted(missing)}")
    dims = tuple(int(v) for v in doc["dims"])
    if len(dims) != 4:
        raise ValueError(f"{path}: dims must have four entries, got {doc['dims']}")
    lat = Lattice(dims, float(doc["spacing"]))
    try:
        a = _unflatten_site_major(doc["a"], dims, 4)
        phi_re = _unflatten_site_major(doc["phi_re"], dims, 2)
        phi_im = _unflatten_site_major(doc["phi_im"], dims, 2)
        s = _unflatten_site_major(doc["s"], dims, 0)
    except ValueError as exc:
        raise ValueError(f"{path}: field length mismatch ({exc})") from None
    seed = doc.get("seed")
    return Configuration(
        lat,
        GaugeField(a, doc["flux"]),
        phi_re + 1j * phi_im,
        s,
        seed=None if seed is None else int(seed),
    )
