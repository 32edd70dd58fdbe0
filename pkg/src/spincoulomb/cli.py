"""Command-line front end: verification sweeps and reproducible tables.

Every table goes out as CSV (12 significant digits, LF endings, ``#`` header
lines carrying the full resolved configuration) or as a JSON mirror of the
same values.  Output is byte-identical between runs unless ``--stamp`` adds a
timestamp line.

Exit codes: 0 success, 1 a tolerance check failed, 2 invalid configuration.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import click
import numpy as np

from . import dirac, forces, gauge, orbit, radial
from .errors import NoSolutionError, SpinCoulombError, SupercriticalError

ENV_OUTPUT_DIR = "SPINCOULOMB_OUTPUT_DIR"
SIG_DIGITS = 12

EXIT_OK, EXIT_TOL, EXIT_CONFIG = 0, 1, 2


# ------------------------------------------------------------------ tables


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    footer: dict = field(default_factory=dict)


def fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        out = f"{v:.{SIG_DIGITS}g}"
        return "0" if out == "-0" else out
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            return fmt_value(v)
        return float(fmt_value(v))
    return v


def render(table: Table, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "meta": {k: _json_value(v) for k, v in table.meta.items()},
            "columns": table.columns,
            "rows": [[_json_value(v) for v in row] for row in table.rows],
            "footer": {k: _json_value(v) for k, v in table.footer.items()},
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    for k, v in table.meta.items():
        buf.write(f"# {k} = {fmt_value(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([fmt_value(v) for v in row])
    for k, v in table.footer.items():
        buf.write(f"# {k} = {fmt_value(v)}\n")
    return buf.getvalue()


def _emit(ctx: click.Context, table: Table) -> None:
    obj = ctx.obj
    meta = {"command": ctx.command_path, "package_version": _pkg_version()}
    if obj["stamp"]:
        meta["stamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    meta.update(obj["units_meta"])
    meta.update(sorted(table.meta.items()))
    table.meta = meta
    text = render(table, obj["fmt"])
    out = obj["output"]
    if out is None:
        click.echo(text, nl=False)
        return
    path = Path(out)
    base = os.environ.get(ENV_OUTPUT_DIR)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def _pkg_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


# ------------------------------------------------------------------ parameter types


class IntRange(click.ParamType):
    """``a..b`` (inclusive), a comma list, or a single integer."""

    name = "int-range"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return list(value)
        s = str(value).strip()
        try:
            if ".." in s:
                a, b = s.split("..")
                lo, hi = int(a), int(b)
                if hi < lo:
                    self.fail(f"empty range {s!r}", param, ctx)
                return list(range(lo, hi + 1))
            return [int(t) for t in s.split(",") if t.strip()]
        except ValueError:
            self.fail(f"not an integer range: {s!r}", param, ctx)


class FloatList(click.ParamType):
    name = "float-list"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return [float(v) for v in value]
        try:
            return [float(t) for t in str(value).split(",") if t.strip()]
        except ValueError:
            self.fail(f"not a float list: {value!r}", param, ctx)


class Vec3(click.ParamType):
    name = "vec3"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)) and len(value) == 3:
            return tuple(float(v) for v in value)
        try:
            v = tuple(float(t) for t in str(value).split(","))
        except ValueError:
            self.fail(f"not a 3-vector: {value!r}", param, ctx)
        if len(v) != 3:
            self.fail(f"need three components, got {value!r}", param, ctx)
        return v


INT_RANGE, FLOAT_LIST, VEC3 = IntRange(), FloatList(), Vec3()


# ------------------------------------------------------------------ config file


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; dashes in keys map to underscores."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.UsageError(f"{path}:{lineno}: expected 'key = value'")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def _apply_config(ctx: click.Context, values: dict, consume: dict[str, str]) -> dict:
    # keys may use the parameter name or any long flag spelling
    params = {}
    for p in ctx.command.params:
        params[p.name] = p
        for opt in p.opts:
            if opt.startswith("--"):
                params[opt[2:].replace("-", "_")] = p
    for key in list(consume):
        if key in params:
            p = params[key]
            raw = consume.pop(key)
            if isinstance(p, click.Option) and p.is_flag:
                values[p.name] = raw.lower() in ("1", "true", "yes", "on")
            else:
                values[p.name] = p.type_cast_value(ctx, raw)
    return values


def _settings(ctx: click.Context, kw: dict) -> dict:
    pending = ctx.obj["config_pending"]
    kw = _apply_config(ctx, dict(kw), pending)
    unknown = sorted(pending)
    if unknown:
        raise click.UsageError(f"unknown config keys for {ctx.info_name}: {', '.join(unknown)}")
    return kw


def _parallel_map(ctx, fn, items):
    jobs = ctx.obj["jobs"]
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# ------------------------------------------------------------------ group


class _Group(click.Group):
    """Maps package errors onto exit code 2 with a one-line message."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SpinCoulombError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_CONFIG)


@click.group(cls=_Group, context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
              help=f"Output file; relative paths resolve under ${ENV_OUTPUT_DIR} when set.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key = value file; entries override flags.")
@click.option("--stamp", is_flag=True, help="Add a UTC timestamp line to the header.")
@click.option("--hbar", type=float, default=1.0, show_default=True)
@click.option("--mass", type=float, default=1.0, show_default=True)
@click.option("--c", type=float, default=1.0, show_default=True, help="Speed of light.")
@click.option("--q", type=float, default=1.0, show_default=True, help="Charge of the probe particle.")
@click.option("--alpha", type=float, default=dirac.ALPHA, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker threads for sweeps.")
@click.pass_context
def cli(ctx, config_path, **kw):
    """Spin-dependent Coulomb potentials: checks, spectra and tables."""
    pending = read_config(config_path) if config_path else {}
    kw = _apply_config(ctx, kw, pending)
    if kw["hbar"] <= 0 or kw["mass"] <= 0 or kw["c"] <= 0:
        raise click.BadParameter("hbar, mass and c must be positive")
    units_meta = {f"unit_{k}": kw[k] for k in ("hbar", "mass", "c", "q", "alpha")}
    ctx.obj = dict(kw, config_pending=pending, units_meta=units_meta)


# ------------------------------------------------------------------ verify-ym


_YM_DEFAULTS = {
    "I": dict(kappa1=1.0, kappa2=0.3, kappa3=1.0),
    "IV": dict(k=1.0, kappa1=1.0, kappa3=1.0),
}


def _ym_configs(o, case, g, k, kappa1, kappa2, kappa3, spins):
    hbar, q = o["hbar"], o["q"]
    cfgs = []
    if case == "II":
        raise NoSolutionError("case II (g = 0, k != 0): no solutions exist for the static spin potentials")
    if case == "all" and g is None and k is None:
        for lab in ("I", "IV"):
            for s in spins:
                d = dict(_YM_DEFAULTS[lab])
                if lab == "I":
                    c = gauge.PotentialConfig.type1(q=q, s=s, hbar=hbar, **d)
                else:
                    c = gauge.PotentialConfig.type2(q=q, s=s, hbar=hbar, **d)
                cfgs.append((lab, c))
        return cfgs
    g = 0.0 if g is None else g
    k = 0.0 if k is None else k
    if case == "all":
        if g == 0 and k != 0:
            raise NoSolutionError("g = 0 with k != 0: no solutions exist for the static spin potentials")
        case = "I" if (g == 0 and k == 0) else ("III" if k == 0 else "IV")
    d = _YM_DEFAULTS.get(case, {})
    k1 = d.get("kappa1", 0.0) if kappa1 is None else kappa1
    k2 = (d.get("kappa2", 0.0) if case == "I" else 0.0) if kappa2 is None else kappa2
    k3 = d.get("kappa3", 1.0) if kappa3 is None else kappa3
    if case == "IV" and g == 0 and k == 0:
        k = 1.0
        g = 1.0 / (hbar * k)
    if case == "III":
        k1 = 0.0 if kappa1 is None else kappa1
    # a shape is imposed even when (g, k) violate its constraint: negative control
    for s in spins:
        c = gauge.PotentialConfig(g=g, k=k, kappa1=k1, kappa2=k2, kappa3=k3, q=q, s=s, hbar=hbar,
                                  case=case, strict=False)
        cfgs.append((case, c))
    return cfgs


@cli.command("verify-ym")
@click.option("--case", type=click.Choice(["all", "I", "II", "III", "IV"]), default="all", show_default=True)
@click.option("--g", type=float, default=None)
@click.option("--k", type=float, default=None)
@click.option("--kappa1", type=float, default=None)
@click.option("--kappa2", type=float, default=None)
@click.option("--kappa3", type=float, default=None)
@click.option("--spin", "spins", type=FLOAT_LIST, default="0.5,1", show_default=True)
@click.option("--method", type=click.Choice(["analytic", "fd"]), default="analytic", show_default=True)
@click.option("--form", type=click.Choice(list(gauge.FORMS)), default="covariant", show_default=True)
@click.option("--points", type=int, default=64, show_default=True)
@click.option("--tol", type=float, default=None, help="Default 1e-10 analytic, 1e-5 fd.")
@click.pass_context
def verify_ym(ctx, **kw):
    """Four static Yang-Mills residual norms at the standard sample points."""
    kw = _settings(ctx, kw)
    o = ctx.obj
    cfgs = _ym_configs(o, kw["case"], kw["g"], kw["k"], kw["kappa1"], kw["kappa2"], kw["kappa3"], kw["spins"])
    tol = kw["tol"] if kw["tol"] is not None else (1e-10 if kw["method"] == "analytic" else 1e-5)
    pts = gauge.standard_sample_points(kw["points"])
    cols = ["case", "s[hbar]", "point", "x[L]", "y[L]", "z[L]",
            "div_e[field/L]", "curl_e[field/L]", "div_b[field/L]", "curl_b[field/L]"]
    t = Table(cols, meta={**{k: v for k, v in kw.items() if k != "spins"},
                          "spins": ";".join(fmt_value(s) for s in kw["spins"]), "tol": tol})

    def one(item):
        lab, c, i, p = item
        return lab, c, i, p, gauge.ym_residuals(c, p, method=kw["method"], form=kw["form"])

    work = [(lab, c, i, p) for lab, c in cfgs for i, p in enumerate(pts)]
    worst = (0.0, None)
    for lab, c, i, p, res in _parallel_map(ctx, one, work):
        t.rows.append([lab, c.s, i, *p, *res])
        if res.max() > worst[0]:
            worst = (res.max(), (lab, c.s, i))
    t.footer = {"max_residual": worst[0], "pass": worst[0] < tol}
    _emit(ctx, t)
    if worst[0] >= tol:
        lab, s, i = worst[1]
        click.echo(f"tolerance failure: residual {worst[0]:.3e} >= {tol:g} at case {lab}, s={s}, point {i}",
                   err=True)
        ctx.exit(EXIT_TOL)


# ------------------------------------------------------------------ spectrum


@cli.group(cls=_Group)
def spectrum():
    """Closed-form spectra with optional finite-difference oracle columns."""


_LINE_COLS = ["family", "N", "l", "n"]
_E_COLS = ["E_closed[E]", "E_oracle[E]", "rel_discrepancy[1]", "status"]


def _oracle_lines(ctx, lines, oracle: bool, qkappa: float):
    o = ctx.obj
    if not oracle:
        return lines
    lams = sorted({ln.extra["lambda"] for ln in lines if ln is not None and not isinstance(ln, str)})
    need = {}
    for ln in lines:
        if ln is not None and not isinstance(ln, str):
            lam = ln.extra["lambda"]
            need[lam] = max(need.get(lam, 0), ln.N + 1)

    def run(lam):
        return lam, radial.fd_radial_oracle(lam, qkappa, o["mass"], o["hbar"], n_eig=max(need[lam], 1))

    done = dict(_parallel_map(ctx, run, lams))
    for ln in lines:
        if ln is not None and not isinstance(ln, str):
            ln.attach_oracle(done[ln.extra["lambda"]].eigenvalues[ln.N])
    return lines


def _status(ln, rtol):
    if ln.rel_discrepancy is None:
        return "ok"
    return "ok" if ln.rel_discrepancy <= rtol else "mismatch"


def _finish_spectrum(ctx, t: Table, rtol: float, any_bad: bool):
    t.footer = {"rtol": rtol, "pass": not any_bad}
    _emit(ctx, t)
    if any_bad:
        click.echo(f"tolerance failure: closed form and oracle differ by more than {rtol:g}", err=True)
        ctx.exit(EXIT_TOL)


def _oracle_opts(f):
    f = click.option("--oracle/--no-oracle", default=True, show_default=True)(f)
    f = click.option("--rtol", type=float, default=1e-4, show_default=True)(f)
    f = click.option("--qkappa", type=float, default=-1.0, show_default=True, help="q kappa3 of the Coulomb term.")(f)
    return f


@spectrum.command("hydrogen")
@click.option("--n", "ns", type=INT_RANGE, default="1..4", show_default=True, help="Principal quantum numbers.")
@click.option("--l", "l", type=int, default=0, show_default=True)
@_oracle_opts
@click.pass_context
def spectrum_hydrogen(ctx, **kw):
    """E_n = -M (q kappa)^2 / (2 hbar^2 n^2)."""
    kw = _settings(ctx, kw)
    o = ctx.obj
    l = kw["l"]
    if any(n < l + 1 for n in kw["ns"]):
        raise click.BadParameter(f"n must exceed l = {l}")
    lines = [radial.nonrel_energy_hydrogen(n - l - 1, l, o["mass"], kw["qkappa"], o["hbar"]) for n in kw["ns"]]
    _oracle_lines(ctx, lines, kw["oracle"], kw["qkappa"])
    t = Table(_LINE_COLS + _E_COLS, meta=_meta(kw))
    bad = False
    for ln in lines:
        st = _status(ln, kw["rtol"])
        bad |= st != "ok"
        t.rows.append([ln.family, ln.N, ln.l, ln.n, ln.E_closed, ln.E_oracle, ln.rel_discrepancy, st])
    _finish_spectrum(ctx, t, kw["rtol"], bad)


def _meta(kw: dict) -> dict:
    return {k: (";".join(fmt_value(x) for x in v) if isinstance(v, (list, tuple)) else v) for k, v in kw.items()}


@spectrum.command("type1")
@click.option("--l", "ls", type=INT_RANGE, default="0..2", show_default=True)
@click.option("--c1", "c1s", type=FLOAT_LIST, default="0.5,1,2", show_default=True)
@click.option("--N", "Ns", type=INT_RANGE, default="0..2", show_default=True)
@_oracle_opts
@click.pass_context
def spectrum_type1(ctx, **kw):
    """Type-I spectrum with l replaced by the effective lambda of Lambda_-."""
    kw = _settings(ctx, kw)
    o = ctx.obj
    rows = []
    for l in kw["ls"]:
        for c1 in kw["c1s"]:
            for N in kw["Ns"]:
                try:
                    rows.append((l, c1, N, radial.nonrel_energy_type1(N, l, c1, o["mass"], kw["qkappa"], o["hbar"])))
                except SupercriticalError as exc:
                    rows.append((l, c1, N, f"supercritical: {exc}"))
    lines = [r[3] for r in rows]
    _oracle_lines(ctx, lines, kw["oracle"], kw["qkappa"])
    cols = ["family", "N", "l", "c1[1]", "Lambda_minus[1]", "lambda[1]"] + _E_COLS
    t = Table(cols, meta=_meta(kw))
    bad = False
    for l, c1, N, ln in rows:
        if isinstance(ln, str):
            # supercritical lines are reported, not fatal
            t.rows.append(["type1", N, l, c1, radial.lambda_hat_eigen(l, c1).lam_minus, None, None, None, None, ln])
            continue
        st = _status(ln, kw["rtol"])
        bad |= st != "ok"
        t.rows.append(["type1", N, l, c1, ln.extra["Lambda"], ln.extra["lambda"], ln.E_closed, ln.E_oracle,
                       ln.rel_discrepancy, st])
    _finish_spectrum(ctx, t, kw["rtol"], bad)


_TYPE2_DEFAULT = ((0, 1.0, "A"), (1, 1.0, "A"), (1, 1.0, "B"), (2, 2.0, "B"))


@spectrum.command("type2")
@click.option("--l", "l", type=int, default=None)
@click.option("--k", "k", type=float, default=None)
@click.option("--case", "case", type=click.Choice(["A", "B"]), default=None)
@click.option("--N", "Ns", type=INT_RANGE, default="0..2", show_default=True)
@_oracle_opts
@click.pass_context
def spectrum_type2(ctx, **kw):
    """Type-II spectrum, Omega = l(l+1) + 2kW + k^2/2."""
    kw = _settings(ctx, kw)
    o = ctx.obj
    if kw["l"] is None and kw["k"] is None and kw["case"] is None:
        combos = _TYPE2_DEFAULT
    else:
        combos = ((kw["l"] if kw["l"] is not None else 0, kw["k"] if kw["k"] is not None else 1.0,
                   kw["case"] or "A"),)
    rows = []
    for l, k, case in combos:
        for N in kw["Ns"]:
            rows.append((l, k, case, radial.nonrel_energy_type2(N, l, case, k, o["mass"], kw["qkappa"], o["hbar"])))
    _oracle_lines(ctx, [r[3] for r in rows], kw["oracle"], kw["qkappa"])
    cols = ["family", "N", "l", "k[1]", "case", "Omega[1]", "lambda[1]"] + _E_COLS
    t = Table(cols, meta=_meta(kw))
    bad = False
    for l, k, case, ln in rows:
        st = _status(ln, kw["rtol"])
        bad |= st != "ok"
        t.rows.append(["type2", ln.N, l, k, case, ln.extra["Omega"], ln.extra["lambda"], ln.E_closed,
                       ln.E_oracle, ln.rel_discrepancy, st])
    _finish_spectrum(ctx, t, kw["rtol"], bad)


@spectrum.command("dirac")
@click.option("--tau", type=float, default=None, help="Default -alpha.")
@click.option("--l", "l", type=int, default=0, show_default=True)
@click.option("--levels", type=int, default=3, show_default=True)
@click.pass_context
def spectrum_dirac(ctx, **kw):
    """Standard Dirac levels E = M c^2 / sqrt(1 + tau^2/(N + nu)^2)."""
    kw = _settings(ctx, kw)
    o = ctx.obj
    tau = -o["alpha"] if kw["tau"] is None else kw["tau"]
    M, c, hbar = o["mass"], o["c"], o["hbar"]
    cols = ["family", "N", "l", "n", "tau[1]", "nu[1]", "E_closed[M c^2]", "E_over_Mc2[1]",
            "E_minus_Mc2[E]", "E_hydrogen[E]", "rel_diff_nonrel[1]", "status"]
    t = Table(cols, meta=dict(_meta(kw), tau_resolved=tau))
    for N in range(kw["levels"]):
        try:
            ln = dirac.dirac_energy_standard(N, kw["l"], tau, M, c, hbar)
        except SupercriticalError as exc:
            t.rows.append(["dirac", N, kw["l"], N + kw["l"] + 1, tau, None, None, None, None, None, None,
                           f"supercritical: {exc}"])
            continue
        n = N + kw["l"] + 1
        Eh = -M * c * c * tau * tau / (2 * n * n)
        Enr = ln.E_closed - M * c * c
        t.rows.append(["dirac", N, kw["l"], n, tau, ln.extra["nu"], ln.E_closed, ln.E_closed / (M * c * c),
                       Enr, Eh, abs(Enr - Eh) / abs(Eh), "ok"])
    _emit(ctx, t)


_DT2_DEFAULT = [(l, kb, kk) for l in (0, 1) for kb in (0.25, 0.5) for kk in (-0.2, -0.5)]


@spectrum.command("dirac-type2")
@click.option("--l", "ls", type=INT_RANGE, default=None)
@click.option("--kbar", "kbars", type=FLOAT_LIST, default=None)
@click.option("--kappabar", "kappabars", type=FLOAT_LIST, default=None)
@click.option("--N", "Ns", type=INT_RANGE, default="0..2", show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True, help="Series residual tolerance.")
@click.pass_context
def spectrum_dirac_type2(ctx, **kw):
    """Dirac levels with the spin vector potential, plus series residuals."""
    kw = _settings(ctx, kw)
    o = ctx.obj
    ls = kw["ls"] if kw["ls"] is not None else [0, 1]
    kbs = kw["kbars"] if kw["kbars"] is not None else [0.25, 0.5]
    kks = kw["kappabars"] if kw["kappabars"] is not None else [-0.2, -0.5]
    cols = ["family", "N", "l", "k_bar[1]", "kappa_bar[1]", "C1[1]", "nu[1]", "E_closed[M c^2]",
            "series_residual[1]", "denominator_gap[1]", "status"]
    t = Table(cols, meta=_meta(dict(kw, ls=ls, kbars=kbs, kappabars=kks)))
    bad = False
    for l in ls:
        for kb in kbs:
            for kk in kks:
                for N in kw["Ns"]:
                    try:
                        s = dirac.dirac_series_type2(N, l, kb, kk, o["mass"], o["c"], o["hbar"])
                    except SupercriticalError as exc:
                        t.rows.append(["dirac-type2", N, l, kb, kk, None, None, None, None, None,
                                       f"supercritical: {exc}"])
                        continue
                    ln = dirac.dirac_energy_type2(N, l, kb, kk, o["mass"], o["c"], o["hbar"])
                    st = "ok" if s.residual < kw["tol"] else "residual"
                    bad |= st != "ok"
                    t.rows.append(["dirac-type2", N, l, kb, kk, ln.extra["C1"], ln.extra["nu"], ln.E_closed,
                                   s.residual, s.denominator_gap, st])
    t.footer = {"pass": not bad}
    _emit(ctx, t)
    if bad:
        click.echo(f"tolerance failure: series residual above {kw['tol']:g}", err=True)
        ctx.exit(EXIT_TOL)


@spectrum.command("general-ode")
@click.option("--l", "ls", type=INT_RANGE, default="0", show_default=True)
@click.option("--c1", "c1s", type=FLOAT_LIST, default="0.5", show_default=True)
@click.option("--c2", "c2s", type=FLOAT_LIST, default="0,0.01", show_default=True)
@click.option("--qkappa", type=float, default=-1.0, show_default=True)
@click.option("--rmax", type=float, default=40.0, show_default=True)
@click.pass_context
def spectrum_general_ode(ctx, **kw):
    """Lowest level with the r-dependent coupling c(r) = c1 + c2 r^3 on a truncated grid."""
    kw = _settings(ctx, kw)
    o = ctx.obj
    cols = ["family", "l", "c1[1]", "c2[L^-3]", "rmax[L]", "E[E]", "richardson_gap[1]", "flagged", "status"]
    t = Table(cols, meta=_meta(kw))
    for l in kw["ls"]:
        for c1 in kw["c1s"]:
            for c2 in kw["c2s"]:
                try:
                    res = radial.general_type1_ode(l, c1, c2, kw["qkappa"], o["mass"], o["hbar"], kw["rmax"])
                except SupercriticalError as exc:
                    t.rows.append(["general-ode", l, c1, c2, kw["rmax"], None, None, None, f"supercritical: {exc}"])
                    continue
                t.rows.append(["general-ode", l, c1, c2, res.rmax, res.energy, res.richardson_gap, res.flagged,
                               res.reason or "ok"])
    _emit(ctx, t)


# ------------------------------------------------------------------ Z tables


@cli.command("kcr-table")
@click.option("--z", "zs", type=INT_RANGE, default=None, help="Default: the 26 reference charges.")
@click.option("--tol", type=float, default=2e-4, show_default=True)
@click.pass_context
def kcr_table(ctx, **kw):
    """Critical e k / c for each Z, compared with the reference table where one exists."""
    kw = _settings(ctx, kw)
    alpha = ctx.obj["alpha"]
    zs = kw["zs"] if kw["zs"] is not None else sorted(dirac.KCR_TABLE)
    zmax = math.floor(2 / alpha)
    bad_z = [z for z in zs if not 1 <= z < zmax]
    if bad_z:
        raise click.BadParameter(f"Z must lie in [1, {zmax}); got {bad_z}")
    cols = ["Z[e]", "k_cr[e k/c]", "reference[e k/c]", "abs_diff[e k/c]", "status"]
    t = Table(cols, meta=_meta(dict(kw, zs=zs)))
    bad = False
    for z in zs:
        ref = dirac.KCR_TABLE.get(z)
        try:
            val = dirac.kcr(z, alpha)
        except SupercriticalError as exc:
            t.rows.append([z, None, ref, None, f"supercritical: {exc}"])
            continue
        diff = abs(val - ref) if ref is not None else None
        st = "ok" if diff is None or diff <= kw["tol"] else "mismatch"
        bad |= st != "ok"
        t.rows.append([z, val, ref, diff, st])
    t.footer = {"pass": not bad}
    _emit(ctx, t)
    if bad:
        click.echo(f"tolerance failure: k_cr differs from the reference by more than {kw['tol']:g}", err=True)
        ctx.exit(EXIT_TOL)


@cli.command("zmax")
@click.option("--k", "ks", type=FLOAT_LIST, default="0,0.5,1,2,5,10,100", show_default=True)
@click.pass_context
def zmax(ctx, **kw):
    """Largest Z with a real relativistic exponent for each e k / c."""
    kw = _settings(ctx, kw)
    alpha = ctx.obj["alpha"]
    t = Table(["k[e k/c]", "Z_max[e]", "Z_max_floor[e]"], meta=_meta(kw))
    for k in kw["ks"]:
        zb = dirac.z_bound(k, alpha)
        t.rows.append([k, zb, math.floor(zb)])
    _emit(ctx, t)


# ------------------------------------------------------------------ orbit


@cli.command("orbit")
@click.option("--E", "E", type=float, default=-0.3, show_default=True)
@click.option("--L", "L", type=float, default=0.8, show_default=True)
@click.option("--qkappa", type=float, default=-1.0, show_default=True)
@click.option("--periods", type=float, default=10.0, show_default=True)
@click.option("--steps-per-period", type=int, default=10_000, show_default=True)
@click.option("--dt", type=float, default=None, help="Step for unbound orbits (default 1e-3).")
@click.option("--steps", type=int, default=None, help="Step count for unbound orbits (default 20000).")
@click.option("--stride", type=int, default=100, show_default=True)
@click.option("--tol-energy", type=float, default=1e-8, show_default=True)
@click.option("--tol-ell", type=float, default=1e-10, show_default=True)
@click.pass_context
def orbit_cmd(ctx, **kw):
    """Integrate a classical Coulomb orbit; footer holds the conservation ledger and conic fit."""
    kw = _settings(ctx, kw)
    M = ctx.obj["mass"]
    init = orbit.state_from_invariants(kw["E"], kw["L"], M, kw["qkappa"])
    bound = kw["E"] < 0 and kw["qkappa"] < 0
    if bound:
        T = orbit.kepler_period(kw["E"], M, kw["qkappa"])
        dt = T / kw["steps_per_period"]
        steps = int(round(kw["periods"] * kw["steps_per_period"]))
    else:
        dt = kw["dt"] or 1e-3
        steps = kw["steps"] or 20_000
    traj = orbit.integrate_orbit(init, dt, steps, kw["stride"])
    fit = orbit.fit_conic(traj)
    cols = ["t[T]", "x[L]", "y[L]", "r[L]", "theta[rad]", "E[E]", "ell[M L^2/T]"]
    t = Table(cols, meta=dict(_meta(kw), dt=dt, steps=steps))
    for i in range(len(traj.t)):
        t.rows.append([traj.t[i], traj.xy[i, 0], traj.xy[i, 1], traj.r[i], traj.theta[i], traj.energy[i],
                       traj.ell[i]])
    footer = {"max_rel_dE": traj.max_rel_dE, "max_rel_dl": traj.max_rel_dl, "e_fit": fit.e, "fit_rms": fit.rms}
    if kw["qkappa"] < 0:
        footer["e_formula"] = orbit.eccentricity(kw["E"], kw["L"], M, kw["qkappa"])[0]
    ok = traj.max_rel_dE <= kw["tol_energy"] and traj.max_rel_dl <= kw["tol_ell"]
    footer["pass"] = ok
    t.footer = footer
    _emit(ctx, t)
    if not ok:
        click.echo("tolerance failure: conservation drift above tolerance", err=True)
        ctx.exit(EXIT_TOL)


# ------------------------------------------------------------------ forces


@cli.command("forces")
@click.option("--type", "ftype", type=click.Choice(["1", "2"]), default="2", show_default=True)
@click.option("--direction", type=VEC3, default="0.3,0.4,0.5", show_default=True)
@click.option("--r", "rs", type=FLOAT_LIST, default="0.5,1,2,3,4,5", show_default=True)
@click.option("--spin", type=float, default=0.5, show_default=True)
@click.option("--k", type=float, default=1.0, show_default=True, help="Type 2 only.")
@click.option("--kappa1", type=float, default=1.0, show_default=True)
@click.option("--kappa2", type=float, default=0.3, show_default=True, help="Type 1 only.")
@click.option("--kappa3", type=float, default=1.0, show_default=True)
@click.option("--velocity", type=VEC3, default="0.3,-0.2,0.5", show_default=True, help="Type 2 only.")
@click.option("--gamma", type=click.Choice(list(forces.GAMMA_VARIANTS)), default="two-plus", show_default=True)
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.pass_context
def forces_cmd(ctx, **kw):
    """Eigenvalues of each force component along a radial ray."""
    kw = _settings(ctx, kw)
    o = ctx.obj
    d = np.asarray(kw["direction"], dtype=float)
    if not np.linalg.norm(d) > 0:
        raise click.BadParameter("direction must be non-zero")
    d = d / np.linalg.norm(d)
    dim = int(round(2 * kw["spin"] + 1))
    cols = ["r[L]", "part", "axis"] + [f"eig_{i}[F]" for i in range(dim)]
    t = Table(cols, meta=_meta(kw))
    worst = 0.0
    if kw["ftype"] == "1":
        cfg = gauge.PotentialConfig.type1(kw["kappa1"], kw["kappa2"], kw["kappa3"], q=o["q"], s=kw["spin"],
                                          hbar=o["hbar"])
    else:
        cfg = gauge.PotentialConfig.type2(kw["k"], kw["kappa1"], kw["kappa3"], hbar=o["hbar"], q=o["q"],
                                          s=kw["spin"])
    for r in kw["rs"]:
        x = r * d
        if kw["ftype"] == "1":
            F = forces.force_type1(cfg, x)
            worst = max(worst, (F - forces.force_type1_fd(cfg, x)).max_abs())
            parts = {"total": F}
            check = "fd_gradient_max_diff"
        else:
            dec = forces.force_type2(cfg, kw["velocity"], x, c=o["c"], gamma=kw["gamma"])
            parts = {"magnetic": dec.magnetic_part, "electric": dec.electric_part, "spin": dec.spin_part,
                     "total": dec.total}
            if kw["gamma"] == "two-plus":
                direct = forces.force_type2_direct(cfg, kw["velocity"], x, c=o["c"], route="fields")
            else:
                direct = forces.force_type2_direct(cfg, kw["velocity"], x, c=o["c"], route="heisenberg")
            worst = max(worst, (dec.total - direct).max_abs())
            check = "direct_expression_max_diff"
        for name, F in parts.items():
            for ax, comp in zip("xyz", F.comps):
                t.rows.append([r, name, ax, *np.linalg.eigvalsh(0.5 * (comp + comp.conj().T))])
    t.footer = {check: worst, "pass": worst < kw["tol"]}
    _emit(ctx, t)
    if worst >= kw["tol"]:
        click.echo(f"tolerance failure: {check} = {worst:.3e}", err=True)
        ctx.exit(EXIT_TOL)


# ------------------------------------------------------------------ entry point


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="spincoulomb", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_CONFIG
    except click.exceptions.Abort:
        return EXIT_CONFIG
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
