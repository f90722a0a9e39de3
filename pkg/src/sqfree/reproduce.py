"""Desk-scale regeneration of every table and figure into one directory.

Nothing written here depends on wall-clock time or thread count, so two runs
produce byte-identical trees.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import mpmath

from sqfree.cli import csv_text, dumps

TABLE_ELLS = range(0, 11)
COUNT_N = 45
THERMO_N = 40
EXTENT_K = 5


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _frac(x):
    return None if x is None else str(x)


def truncation_rows(seed: int = 0) -> tuple:
    """Rows (ell, d_num, d_den, x_c, entropy bound) plus the GFs and pole sets."""
    from sqfree.genfun import rational_gf
    from sqfree.roots import dominant_real_root, pole_zero_report

    rows, gfs, poles = [], {}, {}
    for ell in TABLE_ELLS:
        gf = rational_gf(ell)
        root = dominant_real_root(gf.denominator, 30, ell=ell)
        with mpmath.workdps(30):
            bound = mpmath.nstr(1 / root.x_c, 12)
        rows.append({"ell": ell, "d_num": gf.d_num, "d_den": gf.d_den, "x_c": root.decimal(9),
                     "growth_upper_bound": bound,
                     "smallest_modulus": str(bool(root.smallest_modulus)).lower()})
        gfs[ell] = gf
        poles[ell] = pole_zero_report(gf, seed=seed)
    return rows, gfs, poles


def reproduce_desk(out: Path, *, threads: Optional[int] = None, budget: Optional[int] = None,
                   seed: int = 0) -> Path:
    from sqfree.analysis import pooled_estimate
    from sqfree.enumerate import count_by_letter, letter_extent
    from sqfree.figures import phase_svg, poles_svg
    from sqfree.morphism import (fixture_paths, load_triple, pf_frequencies,
                                 substitution_matrix, verify_triple)
    from sqfree.thermo import (critical_curve, default_eps_grid, entropy_curve, phase_q_grid,
                               thermo_table)

    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)

    rows, gfs, poles = truncation_rows(seed)
    _write(out / "truncations.csv", csv_text(rows))
    _write(out / "truncations.json", dumps(rows))
    for ell, gf in gfs.items():
        _write(out / "genfun" / f"S{ell}.json", dumps(gf.to_json()))
        _write(out / "genfun" / f"S{ell}.txt", gf.to_text())
        _write(out / "poles" / f"l{ell}.json", dumps(poles[ell].to_json()))
    _write(out / "poles.svg", poles_svg([poles[max(TABLE_ELLS)]]))

    table = count_by_letter(COUNT_N, budget=budget, threads=threads)
    series = table.totals()
    _write(out / "counts.json", dumps({"ell": None, "series": [str(v) for v in series]}))
    _write(out / "counts_by_letter.json", dumps(table.to_json()))
    est = pooled_estimate(series, "diag2")
    _write(out / "estimate.json", dumps({"n_terms": len(series), **est.to_json()}))

    sub = type(table)(table.rows[:THERMO_N + 1])
    _write(out / "free_energy.csv", csv_text(thermo_table(sub, [THERMO_N]).to_rows()))
    _write(out / "entropy.csv", csv_text(entropy_curve(sub, default_eps_grid(), THERMO_N).to_rows()))
    curve = critical_curve(sub, phase_q_grid())
    _write(out / "critical_curve.csv", csv_text(curve.to_rows()))
    _write(out / "phase_diagram.svg", phase_svg(curve))

    for path in fixture_paths():
        triple, _ = load_triple(path)
        cert = verify_triple(triple, 3)
        M = substitution_matrix(triple)
        record = {"name": triple.name, "k": triple.k, "m": triple.m, **cert.to_json(),
                  "matrix": [list(r) for r in M.rows],
                  "frequencies": {x: str(f) for x, f in zip("abc", pf_frequencies(M))}}
        _write(out / "triples" / f"{path.stem}.json", dumps(record))

    extents = []
    for k in range(EXTENT_K + 1):
        e = letter_extent(k, budget=budget)
        extents.append({"k": k, "n_min": e.n_min, "n_max": e.n_max,
                        "support": e.support,
                        "lower_frequency_bound": _frac(e.lower_frequency_bound),
                        "upper_frequency_bound": _frac(e.upper_frequency_bound)})
    _write(out / "extents.json", dumps(extents))
    return out
