"""Shared command handlers: request model in, response model out.

Both the HTTP endpoints and the CLI subcommands call these; the CLI maps
exceptions to exit statuses and the app maps them to HTTP statuses, but
the computation and the response shape are identical.
"""

from __future__ import annotations

from fractions import Fraction

from .. import census as census_mod
from ..census import GridPoint, GridReport, SweepReport
from ..fields import LEVEL_L, make_ctx
from ..modules import char_poly, format_module, is_supersingular, make_module
from ..orders import measured_conductor, order_lattice
from ..polys import APoly, format_apoly, is_irreducible, parse_apoly
from ..weil import classify
from . import models


def _rat(value: Fraction | None) -> int | str | None:
    if value is None:
        return None
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def _match_flag(flag: bool | None) -> str:
    if flag is None:
        return "N/A"
    return "MATCH" if flag else "MISMATCH"


def _format_int_poly(coeffs) -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        k = coeffs[e]
        if k == 0:
            continue
        if e == 0:
            parts.append(str(k))
        elif e == 1:
            parts.append("T" if k == 1 else f"{k}*T")
        else:
            parts.append(f"T^{e}" if k == 1 else f"{k}*T^{e}")
    return "+".join(parts) if parts else "0"


def _parse_P(p: int, s: int, text: str) -> APoly:
    base = make_ctx(p, s)
    P = parse_apoly(base, text)
    if P.degree < 1 or not P.is_monic or not is_irreducible(P):
        raise ValueError(f"P must be monic irreducible, got {format_apoly(P)}")
    return P


def _module_from(req: models.ModuleRequest):
    P = _parse_P(req.p, req.s, req.P)
    ctx = make_ctx(req.p, req.s, req.m * P.degree)
    for name, idx in (("a2", req.a2), ("a3", req.a3)):
        if not 0 <= idx < ctx.order:
            raise ValueError(f"{name} index {idx} out of range [0, {ctx.order})")
    return make_module(
        ctx, P, req.m, req.root, ctx.elem(LEVEL_L, req.a2), ctx.elem(LEVEL_L, req.a3)
    )


def _census_params(report) -> models.CensusParams:
    ctx = report.ctx
    return models.CensusParams(
        p=ctx.p,
        s=ctx.s,
        q=ctx.q,
        P=format_apoly(report.P),
        d=report.d,
        m=report.m,
        n=ctx.n,
        ctx=ctx.text,
    )


def field_info(req: models.FieldInfoRequest) -> models.FieldInfoResponse:
    ctx = make_ctx(req.p, req.s, req.n)
    return models.FieldInfoResponse(
        ctx=ctx.text,
        p=ctx.p,
        s=ctx.s,
        n=ctx.n,
        q=ctx.q,
        order=ctx.order,
        modulus_q=_format_int_poly(ctx.modulus_q),
        modulus_L=_format_int_poly(ctx.modulus_L),
    )


def charpoly(req: models.ModuleRequest) -> models.CharPolyResponse:
    mod = _module_from(req)
    cp = char_poly(mod)
    label = classify(cp.c, cp.mu, cp.P, cp.m)
    ss = is_supersingular(mod, cp)
    return models.CharPolyResponse(
        module=format_module(mod),
        ctx=mod.ctx.text,
        P=format_apoly(mod.P),
        m=mod.m,
        gamma_T=mod.gamma_T.index,
        c=format_apoly(cp.c),
        mu=cp.mu.index,
        char_poly=str(cp),
        label=label.kind,
        supersingular=ss,
    )


def classify_candidate(req: models.ClassifyRequest) -> models.ClassifyResponse:
    P = _parse_P(req.p, req.s, req.P)
    base = make_ctx(req.p, req.s)
    c = parse_apoly(base, req.c)
    if not 1 <= req.mu < base.q:
        raise ValueError(f"mu must be a nonzero F_q index, got {req.mu}")
    label = classify(c, base.elem("q", req.mu), P, req.m)
    return models.ClassifyResponse(
        P=format_apoly(P),
        m=req.m,
        c=format_apoly(c),
        mu=req.mu,
        label=label.kind,
        reason=label.reason,
    )


def _census_response(report) -> models.CensusResponse:
    entries = []
    for cp, label in report.class_list:
        entries.append(
            models.ClassEntry(
                c=format_apoly(cp.c),
                mu=cp.mu.index,
                label=label.kind,
                chi=format_apoly(census_mod.chi_of(cp)),
            )
        )
    return models.CensusResponse(
        params=_census_params(report),
        class_list=entries,
        n_classes=report.n_classes,
        closed_form_classes=_rat(report.closed_form_classes),
        classes_match=report.classes_match,
        chi_list=[format_apoly(chi) for chi in report.chi_list],
        n_chi=report.n_chi,
        fiber_histogram={format_apoly(chi): size for chi, size in report.fiber_histogram},
        H=report.H,
        B=report.B,
        closed_form_chi=_rat(report.closed_form_chi),
        chi_match=report.chi_match,
        fiber_relation="HOLDS" if report.fiber_relation_holds else "UNASSIGNABLE",
        discrepancies=[models.Discrepancy(**d) for d in report.discrepancies],
    )


def run_census(req: models.CensusRequest) -> models.CensusResponse:
    P = _parse_P(req.p, req.s, req.P)
    ctx = make_ctx(req.p, req.s, req.m * P.degree)
    report = census_mod.chi_census(ctx, P, req.m, req.max_work)
    return _census_response(report)


def _sweep_entries(pairs) -> list[models.SweepEntry]:
    out = []
    for cp in pairs:
        label = classify(cp.c, cp.mu, cp.P, cp.m)
        out.append(
            models.SweepEntry(c=format_apoly(cp.c), mu=cp.mu.index, label=label.kind)
        )
    return out


def _sweep_response(report: SweepReport, census_report) -> models.SweepResponse:
    return models.SweepResponse(
        params=_census_params(census_report),
        root=report.root_index,
        n_modules=report.n_modules,
        realized=_sweep_entries(report.realized),
        predicted_not_realized=_sweep_entries(report.predicted_not_realized),
        realized_not_predicted=_sweep_entries(report.realized_not_predicted),
        match=report.matches,
    )


def run_sweep(req: models.SweepRequest) -> models.SweepResponse:
    P = _parse_P(req.p, req.s, req.P)
    ctx = make_ctx(req.p, req.s, req.m * P.degree)
    report = census_mod.brute_force_module_census(
        ctx, P, req.m, req.max_work, root_index=req.root
    )
    census_report = census_mod.chi_census(ctx, P, req.m, req.max_work)
    return _sweep_response(report, census_report)


def run_endo(req: models.EndoRequest) -> models.EndoResponse:
    mod = _module_from(req)
    cp = char_poly(mod)
    desc = measured_conductor(mod, cp)
    return models.EndoResponse(
        module=format_module(mod),
        c=format_apoly(cp.c),
        mu=cp.mu.index,
        disc=format_apoly(desc.disc),
        g=format_apoly(desc.g),
        omega=format_apoly(desc.omega),
        measured_f=format_apoly(desc.measured_f),
        is_maximal=desc.is_maximal,
        order_lattice=[text for _, text in order_lattice(desc.g)],
        conductor_cross_checked=True,
    )


def _grid_row(row) -> models.GridRowModel:
    point = row.point
    base = models.GridRowModel(
        p=point.p,
        s=point.s,
        P=format_apoly(point.P),
        m=point.m,
        d=point.d,
        n=point.n,
        status=row.status,
        warning=row.warning,
    )
    if row.status != "ok":
        return base
    census = row.census
    base.n_classes = census.n_classes
    base.closed_form_classes = _rat(census.closed_form_classes)
    base.classes_match = _match_flag(census.classes_match)
    base.n_chi = census.n_chi
    base.closed_form_chi = _rat(census.closed_form_chi)
    base.chi_match = _match_flag(census.chi_match)
    base.fiber_relation = "HOLDS" if census.fiber_relation_holds else "VIOLATED"
    base.H = census.H
    base.B = census.B
    if row.sweep is not None:
        base.sweep_n_modules = row.sweep.n_modules
        base.sweep_unrealized = len(row.sweep.predicted_not_realized)
        base.sweep_unpredicted = len(row.sweep.realized_not_predicted)
        base.sweep_match = _match_flag(row.sweep.matches)
    if row.conductors is not None:
        base.conductors_realized = ";".join(format_apoly(f) for f in row.conductors)
    return base


def run_grid(req: models.GridRequest) -> models.GridResponse:
    points = []
    for entry in req.points:
        P = _parse_P(entry.p, entry.s, entry.P)
        points.append(GridPoint(p=entry.p, s=entry.s, P=P, m=entry.m))
    report: GridReport = census_mod.discrepancy_report(
        points, brute_force=req.brute_force, endo=req.endo, max_work=req.max_work
    )
    return models.GridResponse(
        meta=report.meta,
        rows=[_grid_row(row) for row in report.rows],
    )
