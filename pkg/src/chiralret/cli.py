"""Command-line interface: JSON configuration, command dispatch, CSV output.

Example::

    chiralret --config 3mcp.json --command scan-r --r-min 1e-9 --r-max 1e-5 --points 200 --log
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .core import (
    CODATA,
    LFC,
    Constants,
    DegenerateInputError,
    Medium,
    Molecule,
    TransferConfig,
    ValidationError,
    Variant,
)
from .discrim import (
    TABLE_I_MEDIA,
    Branch,
    FlatLandscapeError,
    LimitMode,
    Target,
    format_table,
    media_table,
    optimize_real_n,
    scan_complex_n,
    scan_separation,
)
from .greens import LFCPoleError
from .oracle import OracleError, QuadratureError, run_validation
from .rates import rates_LR

COMMANDS = ("rate", "scan-r", "scan-n", "optimize-n", "table", "validate")

EXIT_OK, EXIT_INVALID, EXIT_ORACLE = 0, 1, 2

PRESET_MEDIA = {"vacuum": 1.0 + 0j, **dict(TABLE_I_MEDIA)}

_NUMBER = {"type": "number"}

_MOLECULE_SCHEMA = {
    "type": "object",
    "properties": {
        "d_e_Cm": _NUMBER,
        "d_m_Cm": _NUMBER,
        "cos_theta": _NUMBER,
        "handedness": {"enum": ["left", "right"]},
        "omega0_rad_s": _NUMBER,
    },
    "required": ["d_e_Cm", "d_m_Cm", "cos_theta", "handedness", "omega0_rad_s"],
    "additionalProperties": False,
}

_INDEX_SCHEMA = {
    "type": "object",
    "properties": {"n_re": _NUMBER, "n_im": _NUMBER},
    "required": ["n_re", "n_im"],
    "additionalProperties": False,
}

_EPS_MU_SCHEMA = {
    "type": "object",
    "properties": {"eps_re": _NUMBER, "eps_im": _NUMBER, "mu_re": _NUMBER, "mu_im": _NUMBER},
    "required": ["eps_re", "eps_im", "mu_re", "mu_im"],
    "additionalProperties": False,
}

_NAMED_INDEX_SCHEMA = {
    "type": "object",
    "properties": {"name": {"type": "string"}, "n_re": _NUMBER, "n_im": _NUMBER},
    "required": ["name", "n_re", "n_im"],
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "constants": {
            "type": "object",
            "properties": {"c": _NUMBER, "mu0": _NUMBER, "hbar": _NUMBER},
            "required": ["c", "mu0", "hbar"],
            "additionalProperties": False,
        },
        "molecules": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": _MOLECULE_SCHEMA,
        },
        "donor": {"type": "string"},
        "acceptor": {"type": "string"},
        "medium": {"oneOf": [{"type": "string"}, _INDEX_SCHEMA, _EPS_MU_SCHEMA]},
        "lfc": {"enum": [m.value for m in LFC]},
        "variant": {"enum": [v.value for v in Variant]},
        "r_m": _NUMBER,
        "media": {
            "type": "array",
            "minItems": 1,
            "items": {"oneOf": [{"type": "string"}, _NAMED_INDEX_SCHEMA]},
        },
    },
    "required": ["molecules", "donor", "acceptor"],
    "additionalProperties": False,
}


class ConfigError(ValueError):
    """Unreadable or schema-violating configuration file."""


@dataclass(frozen=True)
class RunConfig:
    molecules: dict
    donor: Molecule
    acceptor: Molecule
    medium: Medium
    lfc: LFC | None = None  # None: each command's default
    variant: Variant = Variant.PRODUCT_CONSISTENT
    constants: Constants = CODATA
    r: float | None = None
    media: tuple = field(default=TABLE_I_MEDIA)

    def transfer(self, r: float | None = None) -> TransferConfig:
        r = self.r if r is None else r
        if r is None:
            raise ValidationError("r_m", "separation required for this command")
        return TransferConfig(self.donor, self.acceptor, r, self.medium,
                              self.lfc_or(LFC.OFF), self.variant, self.constants)

    def lfc_or(self, default: LFC) -> LFC:
        return default if self.lfc is None else self.lfc


def _medium_from(value) -> Medium:
    if isinstance(value, str):
        if value not in PRESET_MEDIA:
            raise ValidationError("medium", f"unknown preset {value!r}; "
                                  f"choose from {sorted(PRESET_MEDIA)}")
        return Medium.from_index(PRESET_MEDIA[value])
    if "n_re" in value:
        return Medium.from_index(complex(value["n_re"], value["n_im"]))
    return Medium(complex(value["eps_re"], value["eps_im"]), complex(value["mu_re"], value["mu_im"]))


def _media_from(items) -> tuple:
    out = []
    for item in items:
        if isinstance(item, str):
            if item not in PRESET_MEDIA:
                raise ValidationError("media", f"unknown preset {item!r}")
            out.append((item, PRESET_MEDIA[item]))
        else:
            out.append((item["name"], complex(item["n_re"], item["n_im"])))
    return tuple(out)


def config_from_dict(data: dict) -> RunConfig:
    """Validate a decoded JSON document and build a RunConfig."""
    try:
        jsonschema.validate(data, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ValidationError(where, exc.message) from None
    molecules = {
        name: Molecule(name, m["d_e_Cm"], m["d_m_Cm"], m["cos_theta"], m["handedness"],
                       m["omega0_rad_s"])
        for name, m in data["molecules"].items()
    }
    for role in ("donor", "acceptor"):
        if data[role] not in molecules:
            raise ValidationError(role, f"molecule {data[role]!r} is not defined")
    const = CODATA
    if "constants" in data:
        k = data["constants"]
        const = Constants.from_c_mu0(k["c"], k["mu0"], k["hbar"])
    return RunConfig(
        molecules=molecules,
        donor=molecules[data["donor"]],
        acceptor=molecules[data["acceptor"]],
        medium=_medium_from(data.get("medium", "vacuum")),
        lfc=LFC(data["lfc"]) if "lfc" in data else None,
        variant=Variant(data.get("variant", Variant.PRODUCT_CONSISTENT.value)),
        constants=const,
        r=data.get("r_m"),
        media=_media_from(data["media"]) if "media" in data else TABLE_I_MEDIA,
    )


def parse_config(path) -> RunConfig:
    """Read and validate a JSON configuration file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return config_from_dict(data)


def bundled_fixture() -> str:
    """Path to the bundled 3MCP configuration."""
    return str(resources.files("chiralret") / "data" / "3mcp.json")


# CSV -------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return f"{float(x):.11e}"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


RATE_HEADER = ("r_m", "gamma_nd_s-2", "gamma_disc_s-2", "gamma_L_s-2", "gamma_R_s-2", "S_1")
SCAN_R_HEADER = ("r_m", "gamma_nd_s-2", "gamma_disc_s-2", "S_1")
SCAN_N_HEADER = ("n_re_1", "n_im_1", "S_near_1", "S_far_1")
OPTIMIZE_HEADER = ("branch", "target", "n_star_1", "S_star_1")
TABLE_HEADER = ("medium", "n_re_1", "n_im_1", "S_near_1", "S_far_1")


@dataclass
class RunResult:
    exit_code: int
    csv: str = ""
    echo: str = ""


def run(command: str, cfg: RunConfig | None, args: argparse.Namespace | None = None) -> RunResult:
    """Execute one command; raises on invalid input."""
    args = args or build_parser().parse_args([])
    if command == "validate":
        report = run_validation()
        code = EXIT_OK if report.passed else EXIT_ORACLE
        return RunResult(code, report.to_csv(), report.to_text())
    if cfg is None:
        raise ValidationError("config", f"--config is required for {command!r}")
    if command == "rate":
        rb = rates_LR(cfg.transfer(args.r))
        row = (cfg.transfer(args.r).r, rb.gamma_nd, rb.gamma_disc, rb.gamma_L, rb.gamma_R, rb.S)
        return RunResult(EXIT_OK, to_csv(RATE_HEADER, [row]))
    if command == "scan-r":
        scan = scan_separation(cfg.transfer(args.r_min), args.r_min, args.r_max, args.points,
                               logspace=args.log)
        return RunResult(EXIT_OK, to_csv(SCAN_R_HEADER, scan.rows()))
    if command == "scan-n":
        grid = scan_complex_n(cfg.donor, cfg.acceptor, (args.re_min, args.re_max), args.re_count,
                              (args.im_min, args.im_max), args.im_count,
                              cfg.lfc_or(LFC.ONSAGER), args.mode)
        return RunResult(EXIT_OK, to_csv(SCAN_N_HEADER, grid.rows()))
    if command == "optimize-n":
        branches = [Branch(args.branch)] if args.branch else list(Branch)
        rows = []
        for b in branches:
            n_star, s_star = optimize_real_n(cfg.donor, cfg.acceptor, b, args.target,
                                             cfg.lfc_or(LFC.ONSAGER), args.mode)
            rows.append((b.value, Target(args.target).value, n_star, s_star))
        return RunResult(EXIT_OK, to_csv(OPTIMIZE_HEADER, rows))
    if command == "table":
        rows = media_table(cfg.donor, cfg.acceptor, cfg.media, cfg.lfc_or(LFC.ONSAGER))
        data = [(r.name, r.n.real, r.n.imag, r.s_near, r.s_far) for r in rows]
        return RunResult(EXIT_OK, to_csv(TABLE_HEADER, data), format_table(rows) + "\n")
    raise ValidationError("command", f"unknown command {command!r}")


class _Parser(argparse.ArgumentParser):
    # usage errors are input validation failures (exit 1); 2 is reserved for oracle failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chiralret", description="Chiral resonance energy transfer in media.")
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--out", help="CSV output path (default: standard output)")
    p.add_argument("--command", choices=COMMANDS, default="rate")
    p.add_argument("--report", help="plain-text report path for 'validate'")
    p.add_argument("--r", type=float, help="separation in m for 'rate' (overrides r_m)")
    p.add_argument("--r-min", type=float, default=1e-10)
    p.add_argument("--r-max", type=float, default=1e-5)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--log", action="store_true", help="logarithmic r spacing for 'scan-r'")
    p.add_argument("--re-min", type=float, default=0.05)
    p.add_argument("--re-max", type=float, default=3.0)
    p.add_argument("--re-count", type=int, default=60)
    p.add_argument("--im-min", type=float, default=0.0)
    p.add_argument("--im-max", type=float, default=3.0)
    p.add_argument("--im-count", type=int, default=61)
    p.add_argument("--branch", choices=[b.value for b in Branch])
    p.add_argument("--target", choices=[t.value for t in Target], default=Target.FAR.value)
    p.add_argument("--mode", choices=[m.value for m in LimitMode],
                   default=LimitMode.DERIVED_DEFAULT.value)
    return p


def _write(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config) if args.config else None
        result = run(args.command, cfg, args)
    except (ConfigError, ValidationError, DegenerateInputError, FlatLandscapeError,
            LFCPoleError) as exc:
        print(f"chiralret: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OracleError, QuadratureError) as exc:
        print(f"chiralret: oracle failure: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    if args.out:
        _write(args.out, result.csv)
        if result.echo and not args.report:
            sys.stdout.write(result.echo)
    else:
        sys.stdout.write(result.csv)
    if args.report:
        _write(args.report, result.echo)
    if result.exit_code == EXIT_ORACLE:
        print("chiralret: oracle checks failed", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
