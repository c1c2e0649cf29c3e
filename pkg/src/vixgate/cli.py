"""Command line front end.

Seven subcommands cover the pipeline: ``vix`` (option strip to index
level), ``er`` (trend ratio of a series), ``scan`` (window/sign
calibration), ``gate`` (daily trade/skip decisions), ``tune`` (threshold
selection), ``basis`` (futures basis rule), and ``backtest`` (original
versus gated strategy comparison).

Reports are written into ``--out`` as JSON and/or CSV. Identical inputs
produce byte-identical files: floats are rendered with repr, JSON keys
are sorted, and rows follow input order. Each file is written to a
temporary name and renamed into place, and every computation finishes
before the first write, so a failing run leaves no partial output.

Exit codes: 0 success, 2 usage or validation error, 3 data error
(unreadable or malformed input), 4 degenerate numeric result. Errors
print a single line to stderr: ``error: <category>: <message>``.
"""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path
from typing import Iterable, Sequence

import click

from .efficiency import effective_ratio, negate
from .errors import DataError, DegenerateError
from .gating import basis_signal, make_gate, tune_threshold
from .metrics import TRADING_DAYS_PER_YEAR, compare
from .options import load_option_chain
from .regression import scan_windows
from .series import SeriesKind, load_daily_series
from .vix import compute_vix

__all__ = ["cli", "main", "entry"]

_SIGN_BY_LABEL = {"pos": 1, "neg": -1}
_SCAN_SIGNS = {"both": (-1, 1), "pos": (1,), "neg": (-1,)}


def _label(sign: int) -> str:
    return "neg" if sign < 0 else "pos"


def _fmt(value) -> str:
    """CSV field: repr keeps floats exact on reload; None becomes blank."""
    return "" if value is None else repr(value)


def _to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _csv_text(header: str, rows: Iterable[str]) -> str:
    return "\n".join([header, *rows]) + "\n"


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _emit(obj: dict, artifacts: dict[str, str], quiet: bool = False) -> None:
    """Write the selected artifacts into the output directory."""
    outdir: Path = obj["out"]
    outdir.mkdir(parents=True, exist_ok=True)
    for name, text in artifacts.items():
        path = outdir / name
        _write_atomic(path, text)
        if not quiet:
            click.echo(f"wrote {path}")


def _select(fmt: str, json_name: str, json_text: str,
            csv_name: str | None = None, csv_text: str | None = None) -> dict:
    artifacts: dict[str, str] = {}
    if fmt in ("json", "both"):
        artifacts[json_name] = json_text
    if csv_text is not None and fmt in ("csv", "both"):
        artifacts[csv_name] = csv_text
    return artifacts


def _load_config(path: Path) -> dict[str, str]:
    """Parse a key=value file into subcommand flag defaults.

    Keys are flag names without the leading dashes; dashes inside a name
    may be written as-is (``literal-dx``) or with underscores. Blank lines
    and ``#`` comments are ignored.
    """
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read config {path}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise click.UsageError(
                f"config {path}:{lineno}: expected key=value, got {raw!r}"
            )
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _command_defaults(command: click.Command, raw: dict[str, str]) -> dict:
    """Rekey config entries by the command's parameter names.

    Config files use flag spellings (``sign=neg``) while click looks up
    defaults under the Python parameter name (``sign_label``).
    """
    by_flag: dict[str, str] = {}
    for param in command.params:
        for opt in param.opts:
            by_flag[opt.lstrip("-").replace("-", "_")] = param.name
    return {by_flag.get(key, key): value for key, value in raw.items()}


def _parse_thetas(ctx, param, value):
    if value is None:
        return None
    if isinstance(value, tuple):
        return value
    tokens = [tok.strip() for tok in str(value).split(",") if tok.strip()]
    if not tokens:
        raise click.BadParameter("expected comma-separated thresholds")
    try:
        return tuple(float(tok) for tok in tokens)
    except ValueError:
        raise click.BadParameter(
            f"expected comma-separated numbers, got {value!r}"
        )


@click.group(name="vixgate")
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("."),
    show_default=True,
    help="Directory for report files.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv", "both"]),
    default="both",
    show_default=True,
    help="Which report files to write.",
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="key=value file supplying subcommand flag defaults; "
    "explicit flags win.",
)
@click.pass_context
def cli(ctx: click.Context, out: Path, fmt: str, config_path: Path | None):
    """Gate a daily trading strategy on the trend of a volatility index.

    \b
    Exit codes:
      0  success
      2  usage or validation error
      3  data error (missing or malformed input)
      4  degenerate numeric result
    """
    if config_path is not None:
        defaults = _load_config(config_path)
        ctx.default_map = {
            name: _command_defaults(command, defaults)
            for name, command in cli.commands.items()
        }
    ctx.obj = {"out": out, "fmt": fmt}


@cli.command()
@click.option(
    "--chain",
    "chain_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Option chain CSV with header strike,side,mid (side C or P).",
)
@click.option("--t", "expiry_years", required=True, type=float,
              help="Time to expiry in years.")
@click.option("--r", "rate", required=True, type=float,
              help="Continuously compounded interest rate.")
@click.option("--c0", required=True, type=float,
              help="Call midprice at the at-the-money strike.")
@click.option("--p0", required=True, type=float,
              help="Put midprice at the at-the-money strike.")
@click.option("--atm", "atm_strike", type=float, default=None,
              help="At-the-money strike seeding the forward; default is "
              "the quoted strike with the smallest call/put gap.")
@click.option("--literal-dx", is_flag=True,
              help="Average neighboring strikes for interior spacings "
              "instead of halving their difference.")
@click.pass_obj
def vix(obj, chain_path, expiry_years, rate, c0, p0, atm_strike, literal_dx):
    """Compute the volatility index level from one option chain."""
    chain = load_option_chain(
        chain_path,
        expiry_years,
        rate,
        atm_call_mid=c0,
        atm_put_mid=p0,
        atm_strike_hint=atm_strike,
    )
    result = compute_vix(chain, literal_dx=literal_dx)
    report = {
        "sigma_squared": result.sigma_squared,
        "vix_level": result.vix_level,
        "forward": result.forward,
        "x0": result.x0,
        "strikes": [
            {"strike": s.strike, "spacing": s.spacing, "mid": s.mid}
            for s in result.strikes
        ],
        "params": {
            "chain": str(chain_path),
            "t": expiry_years,
            "r": rate,
            "c0": c0,
            "p0": p0,
            "atm": atm_strike,
            "literal_dx": literal_dx,
        },
    }
    rows = [
        f"{s.strike!r},{s.spacing!r},{s.mid!r}" for s in result.strikes
    ]
    click.echo(f"vix_level {result.vix_level!r}")
    _emit(obj, _select(obj["fmt"], "vix.json", _to_json(report),
                       "strip.csv", _csv_text("strike,spacing,mid", rows)))


@cli.command()
@click.option(
    "--series",
    "series_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Daily series CSV with header date,value.",
)
@click.option("--window", required=True, type=int,
              help="Trend lookback in bars (at least 1).")
@click.option("--negate", "negate_flag", is_flag=True,
              help="Emit the negated ratio.")
@click.pass_obj
def er(obj, series_path, window, negate_flag):
    """Trend ratio of a daily series: net change over gross change."""
    # generic series input; the Return kind imposes no range constraint
    series = load_daily_series(series_path, SeriesKind.RETURN)
    ratio = effective_ratio(series, window)
    if negate_flag:
        ratio = negate(ratio)
    report = {
        "values": [
            {"date": d.isoformat(), "er": v}
            for d, v in zip(ratio.dates, ratio.values)
        ],
        "params": {
            "series": str(series_path),
            "m": window,
            "negate": negate_flag,
        },
    }
    rows = [
        f"{d.isoformat()},{_fmt(v)}"
        for d, v in zip(ratio.dates, ratio.values)
    ]
    _emit(obj, _select(obj["fmt"], "er.json", _to_json(report),
                       "er.csv", _csv_text("date,er", rows)))


@cli.command()
@click.option(
    "--vix",
    "vix_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Volatility index CSV with header date,value.",
)
@click.option(
    "--returns",
    "returns_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Daily strategy returns CSV with header date,value.",
)
@click.option("--mmin", type=int, default=1, show_default=True,
              help="Smallest window to scan.")
@click.option("--mmax", type=int, default=20, show_default=True,
              help="Largest window to scan.")
@click.option("--signs", "signs_label",
              type=click.Choice(["both", "pos", "neg"]),
              default="both", show_default=True,
              help="Regressor orientations to scan.")
@click.option("--percent", is_flag=True,
              help="Returns file quotes percent; divide by 100 on load.")
@click.pass_obj
def scan(obj, vix_path, returns_path, mmin, mmax, signs_label, percent):
    """Regress returns on the signed trend ratio across windows.

    The winning entry has the largest coefficient; ties go to the
    smaller window, then to the negative orientation.
    """
    vix_series = load_daily_series(vix_path, SeriesKind.VIX_LEVEL)
    returns = load_daily_series(returns_path, SeriesKind.RETURN,
                                percent=percent)
    result = scan_windows(vix_series, returns, mmin, mmax,
                          _SCAN_SIGNS[signs_label])
    report = {
        "entries": [
            {
                "m": e.window,
                "sign": _label(e.sign),
                "coef": e.coefficient,
                "n": e.n_obs,
                "reason": e.reason,
            }
            for e in result.entries
        ],
        "best": {
            "m": result.best.window,
            "sign": _label(result.best.sign),
            "coef": result.best.coefficient,
        },
        "params": {
            "vix": str(vix_path),
            "returns": str(returns_path),
            "mmin": mmin,
            "mmax": mmax,
            "signs": signs_label,
            "percent": percent,
        },
    }
    rows = [
        f"{e.window},{_label(e.sign)},{_fmt(e.coefficient)},{e.n_obs}"
        for e in result.entries
    ]
    best = result.best
    click.echo(
        f"best m={best.window} sign={_label(best.sign)} "
        f"coef={best.coefficient!r}"
    )
    _emit(obj, _select(obj["fmt"], "scan.json", _to_json(report),
                       "scan.csv", _csv_text("m,sign,coef,n", rows)))


@cli.command()
@click.option(
    "--vix",
    "vix_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Volatility index CSV with header date,value.",
)
@click.option("--window", required=True, type=int,
              help="Trend lookback in bars.")
@click.option("--sign", "sign_label", required=True,
              type=click.Choice(["pos", "neg"]),
              help="Gate orientation: skip when sign*ratio >= theta.")
@click.option("--theta", type=float, default=0.1, show_default=True,
              help="Skip threshold in raw ratio units, in (0, 1].")
@click.pass_obj
def gate(obj, vix_path, window, sign_label, theta):
    """Label each day trade, skip, or nosignal (warm-up)."""
    vix_series = load_daily_series(vix_path, SeriesKind.VIX_LEVEL)
    ratio = effective_ratio(vix_series, window)
    signal = make_gate(ratio, _SIGN_BY_LABEL[sign_label], theta)
    report = {
        "decisions": [
            {"date": d.isoformat(), "decision": dec.value}
            for d, dec in zip(signal.dates, signal.decisions)
        ],
        "params": {
            "vix": str(vix_path),
            "m": window,
            "sign": sign_label,
            "theta": theta,
        },
    }
    rows = [
        f"{d.isoformat()},{dec.value}"
        for d, dec in zip(signal.dates, signal.decisions)
    ]
    n_skip = sum(1 for dec in signal.decisions if dec.value == "skip")
    click.echo(f"skip {n_skip} of {len(signal)} day(s)")
    _emit(obj, _select(obj["fmt"], "gate.json", _to_json(report),
                       "gate.csv", _csv_text("date,decision", rows)))


@cli.command()
@click.option(
    "--vix",
    "vix_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Volatility index CSV with header date,value.",
)
@click.option(
    "--returns",
    "returns_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Daily strategy returns CSV with header date,value.",
)
@click.option("--window", required=True, type=int,
              help="Trend lookback in bars.")
@click.option("--sign", "sign_label", required=True,
              type=click.Choice(["pos", "neg"]),
              help="Gate orientation: skip when sign*ratio >= theta.")
@click.option("--thetas", required=True, callback=_parse_thetas,
              help="Comma-separated candidate thresholds, each in (0, 1].")
@click.option("--initial", type=float, default=5.0, show_default=True,
              help="Starting portfolio value.")
@click.option("--percent", is_flag=True,
              help="Returns file quotes percent; divide by 100 on load.")
@click.option("--annualization", type=int, default=TRADING_DAYS_PER_YEAR,
              show_default=True, help="Trading days per year.")
@click.pass_obj
def tune(obj, vix_path, returns_path, window, sign_label, thetas, initial,
         percent, annualization):
    """Pick the Sharpe-maximizing skip threshold from candidates."""
    vix_series = load_daily_series(vix_path, SeriesKind.VIX_LEVEL)
    returns = load_daily_series(returns_path, SeriesKind.RETURN,
                                percent=percent)
    ratio = effective_ratio(vix_series, window)
    best_theta, evaluations = tune_threshold(
        ratio, returns, _SIGN_BY_LABEL[sign_label], list(thetas),
        initial=initial, annualization=annualization,
    )
    candidates = [
        {
            "theta": theta,
            "sharpe": rep.sharpe,
            "mdd": rep.mdd,
            "calmar": rep.calmar,
            "final_value": rep.final_value,
            "n_skipped": rep.n_skipped,
        }
        for theta, rep in evaluations
    ]
    report = {
        "best_theta": best_theta,
        "candidates": candidates,
        "params": {
            "vix": str(vix_path),
            "returns": str(returns_path),
            "m": window,
            "sign": sign_label,
            "thetas": list(thetas),
            "initial": initial,
            "percent": percent,
            "annualization": annualization,
        },
    }
    rows = [
        f"{c['theta']!r},{c['sharpe']!r},{c['mdd']!r},"
        f"{_fmt(c['calmar'])},{c['final_value']!r},{c['n_skipped']}"
        for c in candidates
    ]
    click.echo(f"best_theta {best_theta!r}")
    _emit(obj, _select(
        obj["fmt"], "tune.json", _to_json(report), "tune.csv",
        _csv_text("theta,sharpe,mdd,calmar,final_value,n_skipped", rows),
    ))


@cli.command()
@click.option("--future", required=True, type=float,
              help="Front futures quote, index points.")
@click.option("--cash", required=True, type=float,
              help="Cash index level, index points.")
@click.option("--conv", required=True, type=float,
              help="Expected daily convergence, index points.")
@click.pass_obj
def basis(obj, future, cash, conv):
    """Futures basis rule; prints one decision line."""
    decision = basis_signal(future, cash, conv)
    report = {
        "action": decision.action.value,
        "params": {"future": future, "cash": cash, "conv": conv},
    }
    click.echo(decision.action.value)
    if obj["fmt"] in ("json", "both"):
        _emit(obj, {"basis.json": _to_json(report)}, quiet=True)


@cli.command()
@click.option(
    "--returns",
    "returns_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Daily strategy returns CSV with header date,value.",
)
@click.option(
    "--vix",
    "vix_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Volatility index CSV with header date,value.",
)
@click.option("--window", type=int, default=None,
              help="Trend lookback in bars; requires --sign.")
@click.option("--sign", "sign_label",
              type=click.Choice(["pos", "neg"]), default=None,
              help="Gate orientation: skip when sign*ratio >= theta.")
@click.option("--theta", type=float, default=0.1, show_default=True,
              help="Skip threshold in raw ratio units, in (0, 1].")
@click.option("--auto-scan", is_flag=True,
              help="Calibrate window and sign from the data instead of "
              "passing --window/--sign.")
@click.option("--initial", type=float, default=5.0, show_default=True,
              help="Starting portfolio value.")
@click.option("--percent", is_flag=True,
              help="Returns file quotes percent; divide by 100 on load.")
@click.option("--annualization", type=int, default=TRADING_DAYS_PER_YEAR,
              show_default=True, help="Trading days per year.")
@click.pass_obj
def backtest(obj, returns_path, vix_path, window, sign_label, theta,
             auto_scan, initial, percent, annualization):
    """Compare the strategy with and without the volatility-trend gate.

    With --auto-scan the best (window, sign) regression entry is taken
    from the scan; the gate orientation is then the negation of the
    winning regressor sign, because a positive coefficient puts the poor
    days where the regressor is most negative.
    """
    if auto_scan and (window is not None or sign_label is not None):
        raise click.UsageError(
            "--auto-scan and --window/--sign are mutually exclusive"
        )
    if not auto_scan and (window is None or sign_label is None):
        raise click.UsageError(
            "provide both --window and --sign, or use --auto-scan"
        )
    returns = load_daily_series(returns_path, SeriesKind.RETURN,
                                percent=percent)
    vix_series = load_daily_series(vix_path, SeriesKind.VIX_LEVEL)

    best_json = None
    if auto_scan:
        result = scan_windows(vix_series, returns)
        best = result.best
        window = best.window
        gate_sign = -best.sign
        best_json = {
            "m": best.window,
            "sign": _label(best.sign),
            "coef": best.coefficient,
        }
    else:
        gate_sign = _SIGN_BY_LABEL[sign_label]

    ratio = effective_ratio(vix_series, window)
    signal = make_gate(ratio, gate_sign, theta)
    original, augmented = compare(returns, signal, initial, annualization)

    report = {
        "original": original.to_dict(),
        "augmented": augmented.to_dict(),
        "delta": {
            "sharpe": augmented.sharpe - original.sharpe,
            "mdd": augmented.mdd - original.mdd,
            "calmar": (
                None
                if augmented.calmar is None or original.calmar is None
                else augmented.calmar - original.calmar
            ),
        },
        "n_skipped": augmented.n_skipped,
        "best": best_json,
        "params": {
            "returns": str(returns_path),
            "vix": str(vix_path),
            "m": window,
            "sign": _label(gate_sign),
            "theta": theta,
            "auto_scan": auto_scan,
            "initial": initial,
            "percent": percent,
            "annualization": annualization,
        },
    }

    # Overlay rows carry the plotted convention: the signal column is
    # oriented so skip days sit at or below -theta*10.
    vix_by_date = dict(zip(vix_series.dates, vix_series.values))
    er_by_date = dict(zip(ratio.dates, ratio.values))
    rows = []
    for i, (d, r) in enumerate(returns):
        level = vix_by_date.get(d)
        e = er_by_date.get(d)
        plotted = None if e is None else 10.0 * (0.0 - gate_sign * e)
        rows.append(
            f"{d.isoformat()},{r!r},{original.equity.values[i]!r},"
            f"{augmented.equity.values[i]!r},"
            f"{_fmt(None if level is None else level / 10.0)},"
            f"{_fmt(plotted)}"
        )
    overlay = _csv_text(
        "date,return,equity_original,equity_augmented,vix_div10,er_x10",
        rows,
    )

    click.echo(
        f"original sharpe={original.sharpe!r} mdd={original.mdd!r} "
        f"calmar={original.calmar!r}"
    )
    click.echo(
        f"augmented sharpe={augmented.sharpe!r} mdd={augmented.mdd!r} "
        f"calmar={augmented.calmar!r}"
    )
    click.echo(f"skipped {augmented.n_skipped} of {len(returns)} day(s)")
    _emit(obj, _select(obj["fmt"], "backtest.json", _to_json(report),
                       "backtest.csv", overlay))


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI, mapping the error taxonomy onto exit codes."""
    try:
        cli.main(args=argv, prog_name="vixgate", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"error: usage: {exc.format_message()}", err=True)
        return 2
    except ValueError as exc:
        click.echo(f"error: usage: {exc}", err=True)
        return 2
    except DegenerateError as exc:
        click.echo(f"error: degenerate: {exc}", err=True)
        return 4
    except DataError as exc:
        click.echo(f"error: data: {exc}", err=True)
        return 3
    except OSError as exc:
        click.echo(f"error: data: {exc}", err=True)
        return 3
    return 0


def entry() -> None:
    sys.exit(main())
