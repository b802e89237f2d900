"""Command-line front end.

Subcommands: spectrum, gamma, resolvent, engineer, eigenfunction,
validate {sl|gamma|krein|abstract|all}.  A job is described by flags, a
TOML/JSON config document, or both (flags override file fields); for a
fixed config and seed the emitted CSV/JSON artifacts are byte-identical
across runs.  Numbers are written with 15 significant digits to files
and 6 in display tables, and every result row carries its truncation
and tail/tolerance metadata.

Exit codes: 0 success; 1 a validation suite reported failing checks;
2 configuration/usage errors; 3 numerical failures (poles, insufficient
truncation, convergence), reported with the originating module.
"""

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import krein, validate
from .errors import (ConfigError, ConvergenceError, DiscExtError, PoleError,
                     TruncationError, ValidationError)
from .radial import RadialCoefficients, solve_mode

_MODULE = "discext.cli"

_DISPLAY_ROWS = 12


# ---------------------------------------------------------------------------
# Config handling

@dataclass
class JobConfig:
    """Resolved job description (defaults + config file + flags)."""

    command: str = ""
    preset: str = None
    a_poly: tuple = None
    c_poly: tuple = None
    shift: object = None
    modes: int = None
    truncation: int = 200
    grid: int = 2000
    tol: float = 1e-4
    seed: int = 1234
    z_values: tuple = (1.0,)
    interval: tuple = None
    theta_pairs: dict = field(default_factory=dict)
    target_pairs: dict = field(default_factory=dict)
    block: int = 4
    out: str = None
    format: str = "csv"
    emit_theta: bool = False
    trials: int = 40
    suite: str = "all"

    def validate(self):
        if self.truncation < 1 or self.grid < 16:
            raise ConfigError(f"invalid truncation/grid ({self.truncation}/{self.grid})",
                              module=_MODULE)
        if self.tol <= 0:
            raise ConfigError("tolerances must be positive", module=_MODULE)
        if self.modes is not None and self.modes < 1:
            raise ConfigError("--modes must be >= 1", module=_MODULE)
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.format!r}", module=_MODULE)
        dupes = set(self.theta_pairs) & set(self.target_pairs)
        if dupes:
            raise ConfigError(
                f"modes {sorted(dupes)} appear with both an explicit theta and an "
                "engineering target; pick one per mode", module=_MODULE)
        return self


def _parse_number_list(text, kind=float):
    try:
        return tuple(kind(tok) for tok in str(text).replace(";", ",").split(",") if tok != "")
    except ValueError as exc:
        raise ConfigError(f"cannot parse list {text!r}: {exc}", module=_MODULE) from None


def _parse_pairs(text):
    pairs = {}
    for tok in str(text).split(","):
        if not tok:
            continue
        if ":" not in tok:
            raise ConfigError(f"pair {tok!r} is not of the form k:value", module=_MODULE)
        k_txt, v_txt = tok.split(":", 1)
        try:
            k, v = int(k_txt), float(v_txt)
        except ValueError:
            raise ConfigError(f"cannot parse pair {tok!r}", module=_MODULE) from None
        if k in pairs:
            raise ConfigError(f"mode {k} given twice in --pairs", module=_MODULE)
        pairs[k] = v
    if not pairs:
        raise ConfigError("--pairs needs at least one k:value entry", module=_MODULE)
    return pairs


def _parse_interval(text):
    toks = str(text).replace(":", ",").split(",")
    if len(toks) != 2:
        raise ConfigError(f"interval must be lo,hi — got {text!r}", module=_MODULE)
    try:
        lo, hi = float(toks[0]), float(toks[1])
    except ValueError:
        raise ConfigError(f"cannot parse interval {text!r}", module=_MODULE) from None
    if not lo < hi:
        raise ConfigError(f"empty interval {text!r}", module=_MODULE)
    return (lo, hi)


def _parse_z_list(text):
    out = []
    for tok in str(text).split(","):
        if not tok:
            continue
        try:
            out.append(complex(tok))
        except ValueError:
            raise ConfigError(f"cannot parse z value {tok!r}", module=_MODULE) from None
    if not out:
        raise ConfigError("--z needs at least one value", module=_MODULE)
    return tuple(out)


def _load_config_file(path):
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}", module=_MODULE) from None
    if str(path).endswith(".json"):
        loaders = ("json",)
    elif str(path).endswith(".toml"):
        loaders = ("toml",)
    else:
        loaders = ("toml", "json")
    last = None
    for kind in loaders:
        try:
            if kind == "toml":
                try:
                    import tomllib as toml_mod
                except ModuleNotFoundError:
                    import tomli as toml_mod
                return toml_mod.loads(blob.decode())
            return json.loads(blob.decode())
        except Exception as exc:
            last = exc
    raise ConfigError(f"cannot parse config file {path}: {last}", module=_MODULE)


def _int_keyed(mapping, where):
    out = {}
    for k, v in dict(mapping).items():
        try:
            out[int(k)] = float(v)
        except (TypeError, ValueError):
            raise ConfigError(f"bad entry {k!r}: {v!r} in {where}", module=_MODULE) from None
    return out


def _apply_config_file(cfg, doc):
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a table/object", module=_MODULE)
    co = doc.get("coefficients", {})
    if "preset" in co:
        cfg.preset = str(co["preset"])
    if "a_poly" in co:
        cfg.a_poly = tuple(float(v) for v in co["a_poly"])
    if "c_poly" in co:
        cfg.c_poly = tuple(float(v) for v in co["c_poly"])
    if "shift" in co:
        cfg.shift = co["shift"]
    job = doc.get("job", {})
    for key, attr, cast in (("modes", "modes", int), ("M", "truncation", int),
                            ("grid", "grid", int), ("tol", "tol", float),
                            ("seed", "seed", int), ("trials", "trials", int)):
        if key in job:
            setattr(cfg, attr, cast(job[key]))
    ext = doc.get("extension", {})
    if "theta" in ext:
        cfg.theta_pairs = _int_keyed(ext["theta"], "extension.theta")
    if "targets" in ext:
        cfg.target_pairs = _int_keyed(ext["targets"], "extension.targets")
    query = doc.get("query", {})
    if "z" in query:
        cfg.z_values = tuple(complex(v) for v in query["z"])
    if "interval" in query:
        iv = query["interval"]
        cfg.interval = _parse_interval(f"{iv[0]},{iv[1]}" if isinstance(iv, (list, tuple)) else iv)
    if "block" in query:
        cfg.block = int(query["block"])
    output = doc.get("output", {})
    if "path" in output:
        cfg.out = str(output["path"])
    if "format" in output:
        cfg.format = str(output["format"])
    return cfg


def build_config(args):
    cfg = JobConfig(command=args.command)
    if getattr(args, "config", None):
        cfg = _apply_config_file(cfg, _load_config_file(args.config))
    flag_map = (("preset", "preset", str), ("shift", "shift", str),
                ("modes", "modes", int), ("M", "truncation", int),
                ("grid", "grid", int), ("tol", "tol", float), ("seed", "seed", int),
                ("block", "block", int), ("out", "out", str), ("format", "format", str),
                ("trials", "trials", int))
    for flag, attr, cast in flag_map:
        val = getattr(args, flag, None)
        if val is not None:
            setattr(cfg, attr, cast(val))
    if getattr(args, "a_poly", None) is not None:
        cfg.a_poly = _parse_number_list(args.a_poly)
    if getattr(args, "c_poly", None) is not None:
        cfg.c_poly = _parse_number_list(args.c_poly)
    if getattr(args, "z", None) is not None:
        cfg.z_values = _parse_z_list(args.z)
    if getattr(args, "interval", None) is not None:
        cfg.interval = _parse_interval(args.interval)
    if getattr(args, "pairs", None) is not None:
        pairs = _parse_pairs(args.pairs)
        if args.command == "resolvent":
            cfg.theta_pairs = pairs
        else:
            cfg.target_pairs = pairs
    cfg.emit_theta = bool(getattr(args, "emit_theta", False))
    if getattr(args, "suite", None) is not None:
        cfg.suite = args.suite
    return cfg.validate()


def coefficients_from_config(cfg):
    if cfg.a_poly is not None or cfg.c_poly is not None:
        shift = cfg.shift if cfg.shift is not None else 0.0
        if isinstance(shift, str) and shift != "auto":
            shift = float(shift)
        return RadialCoefficients.from_polynomials(cfg.a_poly or (1.0,),
                                                   cfg.c_poly or (0.0,), shift=shift)
    preset = cfg.preset or "laplacian"
    if preset != "laplacian":
        raise ConfigError(f"unknown coefficient preset {preset!r}", module=_MODULE)
    coeffs = RadialCoefficients.laplacian()
    if cfg.shift is not None and cfg.shift != "auto":
        coeffs = replace(coeffs, shift=float(cfg.shift))
    elif cfg.shift == "auto":
        coeffs = replace(coeffs, shift="auto")
    return coeffs


def _mode_window(cfg, needed):
    """Modes to solve; rejects queried modes outside an explicit window."""
    needed = sorted({abs(int(n)) for n in needed})
    if cfg.modes is not None:
        outside = [n for n in needed if n >= cfg.modes]
        if outside:
            raise ConfigError(
                f"modes {outside} outside the computed window (--modes {cfg.modes}); "
                "raise --modes or drop the query", module=_MODULE)
    return needed


def solve_spectra(coeffs, mode_ids, truncation, grid):
    """Solve the needed radial modes in parallel; assemble in order."""
    mode_ids = sorted(set(mode_ids))
    if not mode_ids:
        return {}
    with ThreadPoolExecutor(max_workers=min(4, len(mode_ids))) as pool:
        futures = {n: pool.submit(solve_mode, coeffs, n, truncation, grid)
                   for n in mode_ids}
        return {n: futures[n].result() for n in mode_ids}


# ---------------------------------------------------------------------------
# Output

def _fmt15(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.15g}"


def _fmt6(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.6g}"


def _round15(obj):
    if isinstance(obj, dict):
        return {str(k): _round15(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round15(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.15g}")
    if isinstance(obj, complex):
        return {"re": _round15(obj.real), "im": _round15(obj.imag)}
    return obj


def emit(cfg, columns, rows, extra=None):
    """Write the result table (csv/json) and print a display table."""
    if cfg.out:
        if cfg.format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_fmt15(v) for v in row])
            payload = buf.getvalue()
        else:
            doc = {"command": cfg.command, "columns": list(columns),
                   "rows": _round15([list(r) for r in rows])}
            if extra:
                doc.update(_round15(extra))
            payload = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        with open(cfg.out, "w") as fh:
            fh.write(payload)
    widths = [max(len(str(c)), 12) for c in columns]
    print("  ".join(str(c).rjust(w) for c, w in zip(columns, widths)))
    for row in rows[:_DISPLAY_ROWS]:
        print("  ".join(_fmt6(v).rjust(w) for v, w in zip(row, widths)))
    if len(rows) > _DISPLAY_ROWS:
        print(f"... ({len(rows)} rows total"
              + (f", full table in {cfg.out})" if cfg.out else ")"))


# ---------------------------------------------------------------------------
# Subcommands

def cmd_spectrum(cfg):
    coeffs = coefficients_from_config(cfg)
    modes = list(range(cfg.modes if cfg.modes is not None else 3))
    spectra = solve_spectra(coeffs, modes, cfg.truncation, cfg.grid)
    rows = []
    for n in modes:
        ms = spectra[n]
        meta = ms.discretization_meta
        for m in range(1, ms.truncation + 1):
            rows.append((n, m, ms.eigenvalues[m - 1], ms.fluxes[m - 1],
                         meta["grid_size"], meta["scheme_order"], meta["shift_applied"]))
    emit(cfg, ("n", "m", "lambda2", "flux", "grid_size", "scheme_order", "shift"), rows)
    return 0


def cmd_gamma(cfg):
    coeffs = coefficients_from_config(cfg)
    modes = list(range(cfg.modes if cfg.modes is not None else 3))
    spectra = solve_spectra(coeffs, modes, cfg.truncation, cfg.grid)
    rows = []
    for k in modes:
        for z in cfg.z_values:
            ev = krein.gamma_diag(spectra[abs(k)], k, z, rel_tol=cfg.tol)
            rows.append((k, z.real, z.imag, ev.value.real, ev.value.imag,
                         ev.truncation_M, ev.tail_estimate))
    emit(cfg, ("k", "re_z", "im_z", "re_value", "im_value", "truncation_M",
               "tail_estimate"), rows)
    return 0


def cmd_resolvent(cfg):
    if not cfg.theta_pairs:
        raise ConfigError("resolvent needs extension couplings: --pairs k:theta",
                          module=_MODULE)
    coeffs = coefficients_from_config(cfg)
    params = krein.ExtensionParameter(dict(cfg.theta_pairs))
    needed = _mode_window(cfg, params.index_set)
    spectra = solve_spectra(coeffs, needed, cfg.truncation, cfg.grid)
    block = min(cfg.block, cfg.truncation)
    rows = []
    for n in sorted(params.index_set):
        for z in cfg.z_values:
            ev = krein.gamma_diag(spectra[abs(n)], n, z, rel_tol=cfg.tol)
            mat = krein.resolvent_block(params, spectra, n, z, block, rel_tol=cfg.tol)
            for m in range(1, block + 1):
                for mt in range(1, block + 1):
                    val = mat[m - 1, mt - 1]
                    rows.append((m, n, mt, n, z.real, z.imag, val.real, val.imag,
                                 ev.truncation_M, ev.tail_estimate))
    emit(cfg, ("m", "n", "mt", "nt", "re_z", "im_z", "re_value", "im_value",
               "truncation_M", "tail_estimate"), rows)
    return 0


def cmd_engineer(cfg):
    if not cfg.target_pairs:
        raise ConfigError("engineer needs targets: --pairs k:lambda_target",
                          module=_MODULE)
    coeffs = coefficients_from_config(cfg)
    needed = _mode_window(cfg, cfg.target_pairs)
    spectra = solve_spectra(coeffs, needed, cfg.truncation, cfg.grid)
    columns = ["k", "lambda_target", "theta", "truncation_M", "tail_estimate"]
    if cfg.interval is not None:
        columns.append("recovered_lambda")
    rows = []
    for k in sorted(cfg.target_pairs):
        target = cfg.target_pairs[k]
        ms = spectra[abs(k)]
        theta = krein.engineer_theta(ms, target, rel_tol=cfg.tol)
        est = (krein.gamma_diag(ms, k, target, rel_tol=cfg.tol).tail_estimate
               if target != 0.0 else 0.0)
        row = [k, target, theta, ms.truncation, est]
        if cfg.interval is not None:
            params = krein.ExtensionParameter({k: theta})
            found = krein.find_extension_eigenvalues(params, spectra, cfg.interval,
                                                     rel_tol=cfg.tol)
            mine = [lam for kk, lam in found if kk == k]
            row.append(min(mine, key=lambda lam: abs(lam - target))
                       if mine else float("nan"))
        rows.append(tuple(row))
        if cfg.emit_theta:
            print(f"theta_{k} = {theta:.15g}")
    emit(cfg, tuple(columns), rows)
    return 0


def cmd_eigenfunction(cfg):
    if not cfg.target_pairs:
        raise ConfigError("eigenfunction needs --pairs k:lambda", module=_MODULE)
    coeffs = coefficients_from_config(cfg)
    needed = _mode_window(cfg, cfg.target_pairs)
    spectra = solve_spectra(coeffs, needed, cfg.truncation, cfg.grid)
    rows = []
    for k in sorted(cfg.target_pairs):
        lam = cfg.target_pairs[k]
        synth = krein.synthesize_eigenfunction(spectra[abs(k)], lam)
        for r, val in zip(synth.grid, synth.radial_samples):
            rows.append((k, lam, r, val, synth.meta["truncation"]))
    emit(cfg, ("k", "lambda", "r", "value", "truncation_M"), rows)
    return 0


def cmd_validate(cfg):
    results, report = validate.run_suite(cfg.suite, seed=cfg.seed, trials=cfg.trials)
    for res in results:
        print(res.line())
    failures = report["failures"]
    print(f"{len(results) - failures}/{len(results)} checks passed")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(json.dumps(_round15(report), sort_keys=True, indent=2) + "\n")
    return 1 if failures else 0


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="discext",
        description="Self-adjoint extensions of rotation-invariant elliptic operators "
                    "on the unit disc: spectra, Weyl functions, resolvents, spectral "
                    "engineering.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML or JSON job document (flags override)")
    common.add_argument("--preset", help="coefficient preset (laplacian)")
    common.add_argument("--a-poly", dest="a_poly",
                        help="ascending polynomial coefficients of a(r), e.g. 1,0,0.5")
    common.add_argument("--c-poly", dest="c_poly",
                        help="ascending polynomial coefficients of c(r)")
    common.add_argument("--shift", help="constant added to c, or 'auto'")
    common.add_argument("--modes", type=int, help="mode window: compute |n| < MODES")
    common.add_argument("--M", type=int, help="radial truncation (modes per n)")
    common.add_argument("--grid", type=int, help="radial grid size")
    common.add_argument("--tol", type=float, help="relative series tolerance")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--out", help="output artifact path")
    common.add_argument("--format", choices=("csv", "json"), help="artifact format")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common],
                   help="radial eigenvalues and boundary fluxes per mode")
    p_gamma = sub.add_parser("gamma", parents=[common],
                             help="diagonal Weyl-function values")
    p_gamma.add_argument("--z", help="comma-separated spectral points (complex ok)")
    p_res = sub.add_parser("resolvent", parents=[common],
                           help="extension resolvent blocks")
    p_res.add_argument("--z", help="comma-separated spectral points")
    p_res.add_argument("--pairs", help="extension couplings k:theta[,k:theta...]")
    p_res.add_argument("--block", type=int, help="emit an MxM block per mode")
    p_eng = sub.add_parser("engineer", parents=[common],
                           help="couplings that place prescribed eigenvalues")
    p_eng.add_argument("--pairs", help="targets k:lambda[,k:lambda...]")
    p_eng.add_argument("--emit-theta", action="store_true",
                       help="print theta_k lines to stdout")
    p_eng.add_argument("--interval",
                       help="lo,hi: verify by searching the engineered eigenvalue")
    p_eig = sub.add_parser("eigenfunction", parents=[common],
                           help="synthesize the eigenfunction series on the grid")
    p_eig.add_argument("--pairs", help="k:lambda pairs to synthesize")
    p_val = sub.add_parser("validate", parents=[common],
                           help="run a built-in validation suite")
    p_val.add_argument("suite", choices=validate.SUITES + ("all",))
    p_val.add_argument("--trials", type=int, help="random trials (abstract suite)")
    return parser


_HANDLERS = {"spectrum": cmd_spectrum, "gamma": cmd_gamma, "resolvent": cmd_resolvent,
             "engineer": cmd_engineer, "eigenfunction": cmd_eigenfunction,
             "validate": cmd_validate}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        return _HANDLERS[args.command](cfg)
    except (ConfigError, ValidationError) as exc:
        print(f"config error [{exc.module}]: {exc}", file=sys.stderr)
        return 2
    except (PoleError, TruncationError, ConvergenceError) as exc:
        print(f"numerical failure [{exc.module}]: {exc}", file=sys.stderr)
        return 3
    except DiscExtError as exc:
        print(f"error [{exc.module}]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
