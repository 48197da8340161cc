"""Command-line front end; a thin client over the service handlers.

Every subcommand builds the same request model the HTTP endpoint takes,
calls the shared handler in-process, and renders the response.  Output is
deterministic: identical invocations emit byte-identical bytes.

Exit statuses: 0 success, 2 usage error (including malformed polynomial
text, reported with its position), 3 work-budget refusal, 4 internal
cross-check failure.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from .errors import CrossCheckError, PolyParseError, ScaleGuardError
from .service import handlers, models

CENSUS_CSV_HEADER = ["c", "mu", "label", "chi"]
CHI_CSV_HEADER = ["chi", "fiber_size"]
SWEEP_CSV_HEADER = ["c", "mu", "label", "status"]
GRID_CSV_HEADER = [
    "p",
    "s",
    "P",
    "m",
    "d",
    "n",
    "status",
    "n_classes",
    "closed_form_classes",
    "classes_match",
    "n_chi",
    "closed_form_chi",
    "chi_match",
    "fiber_relation",
    "H",
    "B",
    "sweep_n_modules",
    "sweep_unrealized",
    "sweep_unpredicted",
    "sweep_match",
    "conductors_realized",
    "warning",
]


class _ExitCodeError(click.ClickException):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.exit_code = code


def _call(handler, request):
    try:
        return handler(request)
    except PolyParseError as exc:
        raise click.UsageError(str(exc))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except ScaleGuardError as exc:
        raise _ExitCodeError(str(exc), 3)
    except CrossCheckError as exc:
        raise _ExitCodeError(f"internal cross-check failed: {exc}", 4)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _kv_csv(model) -> str:
    data = model.model_dump(mode="json")
    keys = list(data)
    return _csv_text(keys, [[_cell(data[k]) for k in keys]])


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _kv_human(model) -> str:
    data = model.model_dump(mode="json")
    width = max(len(k) for k in data)
    lines = [f"{k.ljust(width)}  {_cell(v)}" for k, v in data.items()]
    return "\n".join(lines) + "\n"


def _render_census(resp: models.CensusResponse, fmt: str, chi_view: bool) -> str:
    if fmt == "json":
        return _json(resp)
    if fmt == "csv":
        if chi_view:
            rows = [[chi, size] for chi, size in resp.fiber_histogram.items()]
            return _csv_text(CHI_CSV_HEADER, rows)
        rows = [[e.c, e.mu, e.label, e.chi] for e in resp.class_list]
        return _csv_text(CENSUS_CSV_HEADER, rows)
    p = resp.params
    lines = [
        f"census (q={p.q}, P={p.P}, m={p.m}, n={p.n})",
        f"classes: {resp.n_classes}"
        + (
            f"  closed form: {resp.closed_form_classes}"
            f" [{_flag(resp.classes_match)}]"
            if resp.closed_form_classes is not None
            else "  closed form: n/a"
        ),
    ]
    for e in resp.class_list:
        lines.append(f"  c={e.c:<12} mu={e.mu}  {e.label:<8} chi={e.chi}")
    lines.append(
        f"chi values: {resp.n_chi}"
        + (
            f"  closed form: {resp.closed_form_chi} [{_flag(resp.chi_match)}]"
            if resp.closed_form_chi is not None
            else "  closed form: n/a"
        )
    )
    for chi, size in resp.fiber_histogram.items():
        lines.append(f"  chi={chi:<12} fiber={size}")
    lines.append(f"fiber relation: {resp.fiber_relation}  H={resp.H}  B={resp.B}")
    for disc in resp.discrepancies:
        lines.append(f"discrepancy [{disc.kind}]: {disc.detail}")
    return "\n".join(lines) + "\n"


def _flag(value: bool | None) -> str:
    if value is None:
        return "N/A"
    return "MATCH" if value else "MISMATCH"


def _json(model) -> str:
    return json.dumps(model.model_dump(mode="json"), indent=2) + "\n"


def _render_sweep(resp: models.SweepResponse, fmt: str) -> str:
    if fmt == "json":
        return _json(resp)
    if fmt == "csv":
        rows = [[e.c, e.mu, e.label, "realized"] for e in resp.realized]
        rows += [
            [e.c, e.mu, e.label, "missing"] for e in resp.predicted_not_realized
        ]
        rows += [
            [e.c, e.mu, e.label, "extra"] for e in resp.realized_not_predicted
        ]
        return _csv_text(SWEEP_CSV_HEADER, rows)
    p = resp.params
    lines = [
        f"sweep (q={p.q}, P={p.P}, m={p.m}): {resp.n_modules} modules, "
        f"{len(resp.realized)} classes realized, "
        f"match={'yes' if resp.match else 'NO'}",
    ]
    for e in resp.realized:
        lines.append(f"  c={e.c:<12} mu={e.mu}  {e.label}")
    if resp.predicted_not_realized:
        lines.append("predicted but not realized:")
        for e in resp.predicted_not_realized:
            lines.append(f"  c={e.c:<12} mu={e.mu}")
    if resp.realized_not_predicted:
        lines.append("realized but not predicted:")
        for e in resp.realized_not_predicted:
            lines.append(f"  c={e.c:<12} mu={e.mu}")
    return "\n".join(lines) + "\n"


def _render_grid(resp: models.GridResponse, fmt: str) -> str:
    if fmt == "json":
        return _json(resp)
    if fmt == "csv":
        rows = []
        for r in resp.rows:
            data = r.model_dump(mode="json")
            rows.append([_cell(data[k]) for k in GRID_CSV_HEADER])
        return _csv_text(GRID_CSV_HEADER, rows)
    lines = []
    for r in resp.rows:
        if r.status != "ok":
            lines.append(f"({r.p},{r.s},{r.P},{r.m}): SKIPPED — {r.warning}")
            continue
        line = (
            f"({r.p},{r.s},{r.P},{r.m}): classes {r.n_classes}"
            f" vs {r.closed_form_classes} [{r.classes_match}]"
            f"; chi {r.n_chi} vs {r.closed_form_chi} [{r.chi_match}]"
            f"; fibers {r.fiber_relation} (H={r.H}, B={r.B})"
        )
        if r.sweep_match:
            line += f"; sweep {r.sweep_match}"
        if r.conductors_realized:
            line += f"; conductors {r.conductors_realized}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def _emit(payload: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    else:
        click.echo(payload, nl=False)


_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["human", "json", "csv"]),
    default="human",
    show_default=True,
)
_out_option = click.option("--out", type=click.Path(dir_okay=False), default=None)
_work_option = click.option(
    "--max-work",
    type=int,
    default=None,
    help="Unit budget: candidate (c, mu) pairs plus modules swept.",
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="drinfeld2")
def main():
    """Frobenius quadratics and isogeny censuses of rank-2 modules."""


@main.command("field-info")
@click.option("--p", "p", type=int, required=True)
@click.option("--s", "s", type=int, default=1, show_default=True)
@click.option("--n", "n", type=int, default=1, show_default=True)
@_format_option
@_out_option
def field_info_cmd(p, s, n, fmt, out):
    """Describe the deterministic field tower for (p, s, n)."""
    resp = _call(handlers.field_info, models.FieldInfoRequest(p=p, s=s, n=n))
    _emit(_json(resp) if fmt == "json" else _kv_csv(resp) if fmt == "csv" else _kv_human(resp), out)


def _module_options(fn):
    for deco in reversed(
        [
            click.option("--p", "p", type=int, required=True),
            click.option("--s", "s", type=int, default=1, show_default=True),
            click.option("--P", "big_p", type=str, required=True, help="monic irreducible, e.g. T^2+1"),
            click.option("--m", "m", type=int, required=True),
            click.option("--a2", "a2", type=int, required=True, help="element index in [0, q^n)"),
            click.option("--a3", "a3", type=int, required=True, help="nonzero element index"),
            click.option("--root", "root", type=int, default=0, show_default=True),
        ]
    ):
        fn = deco(fn)
    return fn


@main.command("charpoly")
@_module_options
@_format_option
@_out_option
def charpoly_cmd(p, s, big_p, m, a2, a3, root, fmt, out):
    """Characteristic quadratic of Frobenius for one module."""
    req = models.ModuleRequest(p=p, s=s, P=big_p, m=m, a2=a2, a3=a3, root=root)
    resp = _call(handlers.charpoly, req)
    _emit(_json(resp) if fmt == "json" else _kv_csv(resp) if fmt == "csv" else _kv_human(resp), out)


@main.command("classify")
@click.option("--p", "p", type=int, required=True)
@click.option("--s", "s", type=int, default=1, show_default=True)
@click.option("--P", "big_p", type=str, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--c", "c", type=str, required=True, help="trace candidate, APoly text")
@click.option("--mu", "mu", type=int, required=True, help="nonzero F_q element index")
@_format_option
@_out_option
def classify_cmd(p, s, big_p, m, c, mu, fmt, out):
    """Label one candidate (c, mu) as ordinary / ss-a / ss-b / ss-c / invalid."""
    req = models.ClassifyRequest(p=p, s=s, P=big_p, m=m, c=c, mu=mu)
    resp = _call(handlers.classify_candidate, req)
    _emit(_json(resp) if fmt == "json" else _kv_csv(resp) if fmt == "csv" else _kv_human(resp), out)


def _census_options(fn):
    for deco in reversed(
        [
            click.option("--p", "p", type=int, required=True),
            click.option("--s", "s", type=int, default=1, show_default=True),
            click.option("--P", "big_p", type=str, required=True),
            click.option("--m", "m", type=int, required=True),
        ]
    ):
        fn = deco(fn)
    return fn


@main.command("census")
@_census_options
@_work_option
@_format_option
@_out_option
def census_cmd(p, s, big_p, m, max_work, fmt, out):
    """Enumerate all valid classes at one (q, P, m) point."""
    req = models.CensusRequest(p=p, s=s, P=big_p, m=m, max_work=max_work)
    resp = _call(handlers.run_census, req)
    _emit(_render_census(resp, fmt, chi_view=False), out)


@main.command("chi-census")
@_census_options
@_work_option
@_format_option
@_out_option
def chi_census_cmd(p, s, big_p, m, max_work, fmt, out):
    """Census grouped by Euler-Poincare characteristic, with the fiber law."""
    req = models.CensusRequest(p=p, s=s, P=big_p, m=m, max_work=max_work)
    resp = _call(handlers.run_census, req)
    _emit(_render_census(resp, fmt, chi_view=True), out)


@main.command("sweep")
@_census_options
@click.option("--root", "root", type=int, default=0, show_default=True)
@_work_option
@_format_option
@_out_option
def sweep_cmd(p, s, big_p, m, root, max_work, fmt, out):
    """Brute-force every module and diff realized classes against prediction."""
    req = models.SweepRequest(p=p, s=s, P=big_p, m=m, root=root, max_work=max_work)
    resp = _call(handlers.run_sweep, req)
    _emit(_render_sweep(resp, fmt), out)


@main.command("endo")
@_module_options
@_format_option
@_out_option
def endo_cmd(p, s, big_p, m, a2, a3, root, fmt, out):
    """Endomorphism-order analysis (conductor measurement) for one module."""
    req = models.EndoRequest(p=p, s=s, P=big_p, m=m, a2=a2, a3=a3, root=root)
    resp = _call(handlers.run_endo, req)
    _emit(_json(resp) if fmt == "json" else _kv_csv(resp) if fmt == "csv" else _kv_human(resp), out)


@main.command("grid")
@click.option(
    "--point",
    "points",
    type=str,
    multiple=True,
    required=True,
    help="Grid point as p,s,P,m (term-form P); repeatable.",
)
@click.option("--brute-force", is_flag=True, default=False)
@click.option("--endo", is_flag=True, default=False)
@_work_option
@_format_option
@_out_option
def grid_cmd(points, brute_force, endo, max_work, fmt, out):
    """Discrepancy report over a list of grid points."""
    parsed = []
    for text in points:
        pieces = text.split(",")
        if len(pieces) != 4:
            raise click.UsageError(f"bad --point {text!r}; expected p,s,P,m")
        try:
            parsed.append(
                models.GridPointRequest(
                    p=int(pieces[0]), s=int(pieces[1]), P=pieces[2], m=int(pieces[3])
                )
            )
        except ValueError as exc:
            raise click.UsageError(f"bad --point {text!r}: {exc}")
    req = models.GridRequest(
        points=parsed, brute_force=brute_force, endo=endo, max_work=max_work
    )
    resp = _call(handlers.run_grid, req)
    _emit(_render_grid(resp, fmt), out)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
