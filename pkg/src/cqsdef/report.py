"""Full analysis of one singularity as a JSON-able report, plus the scan
rows used for batch runs.  The human-readable rendering is a projection of
the JSON report, never computed separately.
"""

from __future__ import annotations

import json
from .cqs import cqs_new, is_t_singularity
from .chains import enumerate_K
from .minkowski import segment, segment_length
from .totalspace import (
    all_deformations,
    components_of,
    deformation_equations,
    generator_relations,
    nu_count,
    versal_map,
)
from .fibers import general_fiber, is_smoothing
from .resolutions import canonical_model, fan_decomposition_for, p_resolution_fan

SCHEMA_VERSION = 1


class ReportInvariantError(RuntimeError):
    """The assembled report is internally inconsistent."""


def build_report(n: int, q: int, verbose: bool = False) -> dict:
    """Assemble the complete analysis of Y_(n,q)."""
    model = cqs_new(n, q)
    ks = enumerate_K(model)
    deformations = all_deformations(model)

    defo_records = []
    smoothing_count = 0
    for defo in deformations:
        comps = components_of(defo)
        fiber = general_fiber(defo)
        smoothing = is_smoothing(defo)
        smoothing_count += smoothing
        can_k, can_fan = canonical_model(defo)
        rec = {
            "label": defo.label,
            "kind": defo.kind,
            "h": defo.h,
            "p": defo.p,
            "d": defo.d,
            "degree_display": list(defo.degree_display()),
            "decomposition": defo.decomp.to_json(),
            "sigma_prime_rays": defo.sigma_prime.to_json(),
            "generator_relations": generator_relations(defo).to_json(),
            "equations": deformation_equations(defo).to_json(),
            "versal_map": versal_map(defo).to_json(),
            "components": [list(k.k) for k in comps],
            "fiber": fiber.to_json(verbose=verbose),
            "is_smoothing": smoothing,
            "simultaneous_resolutions": [
                fan_decomposition_for(defo, k).to_json() for k in comps
            ],
            "canonical_model": {
                "k": list(can_k.k),
                "fan": can_fan.to_json(),
            },
        }
        defo_records.append(rec)

    nu_table = []
    for k in ks:
        for h in model.interior_indices():
            for p in range(1, model.a(h)):
                cnt = nu_count(model, k, h, p)
                if cnt:
                    nu_table.append(
                        {"k": list(k.k), "h": h, "p": p, "count": cnt}
                    )

    report = {
        "schema_version": SCHEMA_VERSION,
        "model": model.to_json(),
        "segments": [
            dict(segment(model, h).to_json(), length=str(segment_length(model, h)))
            for h in model.interior_indices()
        ],
        "components": [
            dict(k.to_json(), p_resolution=p_resolution_fan(model, k).to_json())
            for k in ks
        ],
        "deformations": defo_records,
        "nu_table": nu_table,
        "t_singularity": is_t_singularity(model),
        "counts": {
            "components": len(ks),
            "deformations": len(deformations),
            "smoothings": smoothing_count,
        },
    }
    validate_report(report)
    return report


def validate_report(report: dict) -> None:
    """Cross-consistency of the assembled report."""
    k_list = [tuple(c["k"]) for c in report["components"]]
    for rec in report["deformations"]:
        for k in rec["components"]:
            if tuple(k) not in k_list:
                raise ReportInvariantError(
                    f"{rec['label']} references unknown component {k}"
                )
        if tuple(rec["canonical_model"]["k"]) not in k_list:
            raise ReportInvariantError(
                f"{rec['label']} has unknown canonical component"
            )
    # Degreewise counts, recomputed from the report alone.
    a_chain = report["model"]["a_chain"]
    e = report["model"]["e"]
    nu_rows = {(tuple(r["k"]), r["h"], r["p"]): r["count"] for r in report["nu_table"]}
    for comp in report["components"]:
        k, alpha = tuple(comp["k"]), comp["alpha"]
        for h in range(2, e):
            a_h = a_chain[h - 2]
            gap = a_h - k[h - 2]
            for p in range(1, a_h):
                if p == 1 and alpha[h - 1] == 1 and 3 <= h <= e - 2:
                    expected = 2 * gap + 1
                else:
                    expected = gap // p
                direct = sum(
                    1
                    for rec in report["deformations"]
                    if rec["h"] == h and rec["p"] == p and list(k) in rec["components"]
                )
                if direct != expected or nu_rows.get((k, h, p), 0) != expected:
                    raise ReportInvariantError(
                        f"component count mismatch at k={k}, h={h}, p={p}: "
                        f"catalogue {direct}, table {nu_rows.get((k, h, p), 0)}, "
                        f"formula {expected}"
                    )
    counts = report["counts"]
    if counts["deformations"] != len(report["deformations"]):
        raise ReportInvariantError("deformation count mismatch")
    if counts["components"] != len(report["components"]):
        raise ReportInvariantError("component count mismatch")


def render_text(report: dict) -> str:
    """Human-readable projection of the JSON report."""
    m = report["model"]
    lines = []
    out = lines.append
    out(f"Y_({m['n']},{m['q']})  e = {m['e']}  chain a = {tuple(m['a_chain'])}")
    out(f"dual generators: {m['dual_generators_display']}")
    out(f"T-singularity: {'yes' if report['t_singularity'] else 'no'}")
    out("")
    out(f"versal base components ({report['counts']['components']}):")
    for comp in report["components"]:
        rays = comp["p_resolution"]["rays_display"]
        out(f"  k = {tuple(comp['k'])}  alpha = {tuple(comp['alpha'])}")
        out(f"    partial-resolution rays: {rays}")
    out("")
    out(f"slices:")
    for seg in report["segments"]:
        out(
            f"  h = {seg['h']}: ({seg['beta']}, {seg['gamma']})  "
            f"length {seg['length']}, {seg['lattice_points']} lattice points"
        )
    out("")
    out(f"one-parameter toric deformations ({report['counts']['deformations']}):")
    for rec in report["deformations"]:
        out(f"  {rec['label']}  degree {rec['degree_display']}")
        out(f"    equations: {'; '.join(eq['text'] for eq in rec['equations'])}")
        out(f"    components: {[tuple(k) for k in rec['components']]}")
        fib = rec["fiber"]
        out(
            f"    general fiber: origin {fib['origin']}, "
            f"off-origin {fib['off_origin'] or 'none'}"
            + ("  [smoothing]" if rec["is_smoothing"] else "")
        )
        out(f"    canonical model over k = {tuple(rec['canonical_model']['k'])}")
    out("")
    out(f"smoothings: {report['counts']['smoothings']}")
    return "\n".join(lines)


def scan_row(n: int, q: int) -> dict:
    """Summary row for one singularity; errors are recorded, not raised."""
    try:
        model = cqs_new(n, q)
        ks = enumerate_K(model)
        defos = all_deformations(model)
        return {
            "n": n,
            "q": q,
            "e": model.e,
            "num_components": len(ks),
            "num_deformations": len(defos),
            "num_smoothings": sum(1 for d in defos if is_smoothing(d)),
            "t_singularity": is_t_singularity(model),
        }
    except Exception as exc:  # noqa: BLE001 - per-row fault isolation
        return {"n": n, "q": q, "error": f"{type(exc).__name__}: {exc}"}


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)
