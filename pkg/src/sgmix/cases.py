"""The seven shock-tube benchmark configurations and initial-state assembly.

Cases A..G pair published stiffened-gas constants with left/right
primitive states, a discontinuity position, the final time, and the
numerical defaults used in the reference computations.  Case specs can
be round-tripped through a plain key=value text file so users can
derive custom setups from the published ones.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eos import GasPair, GasParams, primitive_to_conserved, volume_fraction_from_mass
from .exceptions import InvalidConfig, UnknownCase
from .grid import Mesh
from .scheme import MeshState, SchemeConfig

CASE_IDS = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True)
class SideState:
    """Primitive state (p, u, theta) on one side of the diaphragm."""

    p: float
    u: float
    theta: float


@dataclass(frozen=True)
class CaseDefaults:
    """Numerical parameters used for the published run of a case."""

    reg: str
    n_coarse: int
    n_fine: int
    a: float
    beta: float
    a_s: float = 1.0
    prandtl_inv: float = 1.0


@dataclass(frozen=True)
class CaseSpec:
    """One benchmark: gases, domain, jump location, side states, fractions, t_fin, defaults.

    The phase split is given either per side as volume fractions
    (alpha1_left/alpha1_right) or as a uniform mass fraction y1_uniform,
    which is converted to a volume fraction at the local pressure.
    """

    case_id: str
    gases: GasPair
    x_min: float
    x_max: float
    x_disc: float
    left: SideState
    right: SideState
    t_fin: float
    defaults: CaseDefaults
    alpha1_left: Optional[float] = None
    alpha1_right: Optional[float] = None
    y1_uniform: Optional[float] = None

    def __post_init__(self):
        if not self.x_min < self.x_disc < self.x_max:
            raise InvalidConfig("need x_min < x_disc < x_max")
        if self.x_min != -self.x_max:
            raise InvalidConfig("domain must be symmetric about 0 (x_min = -x_max)")
        has_alpha = self.alpha1_left is not None and self.alpha1_right is not None
        has_y = self.y1_uniform is not None
        if has_alpha == has_y:
            raise InvalidConfig("specify either alpha1_left/alpha1_right or y1_uniform")
        if not self.t_fin > 0.0:
            raise InvalidConfig("t_fin must be positive")

    @property
    def x_half_extent(self) -> float:
        return self.x_max

    def side_alpha1(self, side: SideState, alpha1: Optional[float]) -> float:
        if self.y1_uniform is not None:
            return volume_fraction_from_mass(self.y1_uniform, side.p, self.gases)
        return alpha1

    def scheme_config(self, **overrides) -> SchemeConfig:
        """SchemeConfig seeded with this case's defaults."""
        base = dict(
            reg=self.defaults.reg,
            a=self.defaults.a,
            beta=self.defaults.beta,
            a_s=self.defaults.a_s,
            prandtl_inv=self.defaults.prandtl_inv,
        )
        base.update({k: v for k, v in overrides.items() if v is not None})
        return SchemeConfig(**base)


# Published stiffened-gas constants (gamma, cv, p_star, eps0)
AIR_A = GasParams(1.4, 717.5, 0.0, 0.0)
AIR_B = GasParams(1.4, 720.0, 0.0, 0.0)
WATER_AB = GasParams(2.8, 1495.0, 8.5e8, 0.0)
WATER_VAPOR = GasParams(1.43, 1040.0, 0.0, 2030e3)
WATER_CDE = GasParams(2.35, 1816.0, 1e9, -1167e3)
DODECANE_VAPOR = GasParams(1.025, 1956.0, 0.0, -237e3)
DODECANE_LIQUID = GasParams(2.35, 1077.0, 4e8, -755e3)
CO2_VAPOR = GasParams(1.06, 2410.0, 8.86e5, -3.01e5)
CO2_LIQUID = GasParams(1.23, 2440.0, 1.32e8, -6.23e5)

_CASES = {
    # air-to-water shock tube
    "A": CaseSpec(
        case_id="A",
        gases=GasPair(AIR_A, WATER_AB),
        x_min=-5.0, x_max=5.0, x_disc=0.0,
        left=SideState(1e9, 0.0, 308.15),
        right=SideState(1e5, 0.0, 308.15),
        alpha1_left=1.0 - 1e-5, alpha1_right=1e-5,
        t_fin=2e-3,
        defaults=CaseDefaults(reg="qgd", n_coarse=300, n_fine=2000, a=0.3, beta=0.2),
    ),
    # water-to-air shock tube, both halves mixed
    "B": CaseSpec(
        case_id="B",
        gases=GasPair(AIR_B, WATER_AB),
        x_min=-5.0, x_max=5.0, x_disc=0.0,
        left=SideState(2e7, 0.0, 308.15),
        right=SideState(1e7, 0.0, 308.15),
        alpha1_left=0.25, alpha1_right=0.75,
        t_fin=6e-3,
        defaults=CaseDefaults(reg="qgd", n_coarse=500, n_fine=2500, a=2.0, beta=0.1),
    ),
    # mostly water vapor, uniform mass fraction
    "C": CaseSpec(
        case_id="C",
        gases=GasPair(WATER_VAPOR, WATER_CDE),
        x_min=-5.0, x_max=5.0, x_disc=0.0,
        left=SideState(2e5, 0.0, 394.2489),
        right=SideState(1e5, 0.0, 372.8827),
        y1_uniform=0.8,
        t_fin=0.8e-3,
        defaults=CaseDefaults(reg="qhd", n_coarse=200, n_fine=500, a=0.8, beta=0.2),
    ),
    # vanishing liquid phase
    "D": CaseSpec(
        case_id="D",
        gases=GasPair(WATER_VAPOR, WATER_CDE),
        x_min=-5.0, x_max=5.0, x_disc=0.0,
        left=SideState(2e5, 0.0, 395.0),
        right=SideState(1e5, 0.0, 375.0),
        y1_uniform=0.99,
        t_fin=0.5e-3,
        defaults=CaseDefaults(reg="qgd", n_coarse=100, n_fine=500, a=0.2, beta=0.2),
    ),
    # mostly liquid water
    "E": CaseSpec(
        case_id="E",
        gases=GasPair(WATER_VAPOR, WATER_CDE),
        x_min=-5.0, x_max=5.0, x_disc=0.0,
        left=SideState(2e5, 0.0, 395.0),
        right=SideState(1e5, 0.0, 375.0),
        y1_uniform=0.2,
        t_fin=1.5e-3,
        defaults=CaseDefaults(reg="qhd", n_coarse=500, n_fine=1500, a=0.8, beta=0.3),
    ),
    # dodecane vapor-to-liquid, exactly pure sides
    "F": CaseSpec(
        case_id="F",
        gases=GasPair(DODECANE_VAPOR, DODECANE_LIQUID),
        x_min=-5.0, x_max=5.0, x_disc=-2.0,
        left=SideState(1e10, 0.0, 308.15),
        right=SideState(1e5, 0.0, 308.15),
        alpha1_left=1.0, alpha1_right=0.0,
        t_fin=5e-3,
        defaults=CaseDefaults(reg="qgd", n_coarse=500, n_fine=2000, a=0.9, beta=0.1,
                              prandtl_inv=0.2),
    ),
    # carbon dioxide depressurization
    "G": CaseSpec(
        case_id="G",
        gases=GasPair(CO2_VAPOR, CO2_LIQUID),
        x_min=-40.0, x_max=40.0, x_disc=10.0,
        left=SideState(6e6, 0.0, 283.13),
        right=SideState(1e6, 0.0, 283.13),
        alpha1_left=1e-6, alpha1_right=1.0 - 1e-6,
        t_fin=0.08,
        defaults=CaseDefaults(reg="qgd", n_coarse=1200, n_fine=4000, a=0.8, beta=0.1,
                              prandtl_inv=0.1),
    ),
}


def make_case(case_id: str) -> CaseSpec:
    """The published configuration of one of the benchmarks A..G."""
    key = str(case_id).strip().upper()
    if key not in _CASES:
        raise UnknownCase(f"unknown case {case_id!r}; pick one of {', '.join(CASE_IDS)}")
    return _CASES[key]


def build_initial(spec: CaseSpec, mesh: Mesh) -> MeshState:
    """Sample the two-state initial data on a mesh.

    Nodes with x_i < x_disc get the left state, x_i >= x_disc the right
    one (so a node exactly at the jump belongs to the right).  Mass
    fraction cases convert y1 to a volume fraction at each side's
    pressure.
    """
    if mesh.x_half_extent != spec.x_half_extent:
        raise InvalidConfig(
            f"mesh extent {mesh.x_half_extent} does not cover the case domain "
            f"[{spec.x_min}, {spec.x_max}]"
        )
    left = primitive_to_conserved(
        spec.left.p, spec.left.u, spec.left.theta,
        spec.side_alpha1(spec.left, spec.alpha1_left), spec.gases,
    )
    right = primitive_to_conserved(
        spec.right.p, spec.right.u, spec.right.theta,
        spec.side_alpha1(spec.right, spec.alpha1_right), spec.gases,
    )
    x = mesh.main_x()
    is_left = x < spec.x_disc

    def pick(l, r):
        return np.where(is_left, l, r)

    return MeshState.from_conserved(
        mesh, spec.gases,
        pick(left.rho1, right.rho1),
        pick(left.rho2, right.rho2),
        pick(left.mom, right.mom),
        pick(left.etot, right.etot),
    )


_CONFIG_FLOAT_KEYS = (
    "gamma1", "cv1", "p_star1", "eps0_1",
    "gamma2", "cv2", "p_star2", "eps0_2",
    "x_min", "x_max", "x_disc",
    "p_left", "u_left", "theta_left",
    "p_right", "u_right", "theta_right",
    "t_fin", "a", "beta", "a_s", "prandtl_inv",
)
_CONFIG_OPTIONAL_FLOAT_KEYS = ("alpha1_left", "alpha1_right", "y1_uniform")
_CONFIG_INT_KEYS = ("n_coarse", "n_fine")
_CONFIG_STR_KEYS = ("case_id", "reg")


def case_to_config(spec: CaseSpec) -> str:
    """Serialize a case to the key=value text format."""
    g1, g2 = spec.gases.g1, spec.gases.g2
    lines = [
        f"case_id={spec.case_id}",
        f"gamma1={g1.gamma!r}", f"cv1={g1.cv!r}", f"p_star1={g1.p_star!r}", f"eps0_1={g1.eps0!r}",
        f"gamma2={g2.gamma!r}", f"cv2={g2.cv!r}", f"p_star2={g2.p_star!r}", f"eps0_2={g2.eps0!r}",
        f"x_min={spec.x_min!r}", f"x_max={spec.x_max!r}", f"x_disc={spec.x_disc!r}",
        f"p_left={spec.left.p!r}", f"u_left={spec.left.u!r}", f"theta_left={spec.left.theta!r}",
        f"p_right={spec.right.p!r}", f"u_right={spec.right.u!r}", f"theta_right={spec.right.theta!r}",
    ]
    if spec.y1_uniform is not None:
        lines.append(f"y1_uniform={spec.y1_uniform!r}")
    else:
        lines.append(f"alpha1_left={spec.alpha1_left!r}")
        lines.append(f"alpha1_right={spec.alpha1_right!r}")
    d = spec.defaults
    lines += [
        f"t_fin={spec.t_fin!r}",
        f"reg={d.reg}", f"n_coarse={d.n_coarse}", f"n_fine={d.n_fine}",
        f"a={d.a!r}", f"beta={d.beta!r}", f"a_s={d.a_s!r}", f"prandtl_inv={d.prandtl_inv!r}",
    ]
    return "\n".join(lines) + "\n"


def case_from_config(text: str) -> CaseSpec:
    """Parse a case from key=value text (comments with '#', blank lines ignored)."""
    raw = {}
    for lineno, line in enumerate(io.StringIO(text), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise InvalidConfig(f"line {lineno}: expected key=value, got {line.strip()!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key in raw:
            raise InvalidConfig(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    known = set(_CONFIG_FLOAT_KEYS) | set(_CONFIG_OPTIONAL_FLOAT_KEYS) | \
        set(_CONFIG_INT_KEYS) | set(_CONFIG_STR_KEYS)
    unknown = set(raw) - known
    if unknown:
        raise InvalidConfig(f"unknown config keys: {', '.join(sorted(unknown))}")

    def need(key, conv=float):
        if key not in raw:
            raise InvalidConfig(f"missing config key {key!r}")
        try:
            return conv(raw[key])
        except ValueError as exc:
            raise InvalidConfig(f"bad value for {key!r}: {raw[key]!r}") from exc

    def opt(key, conv=float):
        if key not in raw:
            return None
        try:
            return conv(raw[key])
        except ValueError as exc:
            raise InvalidConfig(f"bad value for {key!r}: {raw[key]!r}") from exc

    gases = GasPair(
        GasParams(need("gamma1"), need("cv1"), need("p_star1"), need("eps0_1")),
        GasParams(need("gamma2"), need("cv2"), need("p_star2"), need("eps0_2")),
    )
    defaults = CaseDefaults(
        reg=need("reg", str).lower(),
        n_coarse=need("n_coarse", int),
        n_fine=need("n_fine", int),
        a=need("a"), beta=need("beta"),
        a_s=need("a_s"), prandtl_inv=need("prandtl_inv"),
    )
    return CaseSpec(
        case_id=raw.get("case_id", "custom"),
        gases=gases,
        x_min=need("x_min"), x_max=need("x_max"), x_disc=need("x_disc"),
        left=SideState(need("p_left"), need("u_left"), need("theta_left")),
        right=SideState(need("p_right"), need("u_right"), need("theta_right")),
        t_fin=need("t_fin"),
        defaults=defaults,
        alpha1_left=opt("alpha1_left"),
        alpha1_right=opt("alpha1_right"),
        y1_uniform=opt("y1_uniform"),
    )
