from __future__ import annotations

from pathlib import Path

import numpy as np

from ..centralspin import run_central_spin_scenario
from ..config import CharacteristicGridSpec, MonteCarloSpec, worker_count
from ..dirac import run_dirac_scenario
from ..logging import get_logger
from ..qcore.random import RngStream
from ..reports import CsvTable, emit_svg
from ..validation import ValidationPipeline
from .config import CentralSpinParameters, DiracParameters, RunConfig

logger = get_logger(__name__)

COMPONENTS = ("a_x", "a_y", "a_z")
# table name -> (x column, plotted series)
PLOTS = {
    "central_spin": ("t", ["purity_me", "purity_mc"]),
    "dirac_time": ("t", ["purity", "backscatter_weight"]),
}


def _central_spin_table(p: CentralSpinParameters, seed: int, workers: int | None) -> CsvTable:
    spec = MonteCarloSpec(realizations=p.K, max_workers=workers) if workers else None
    run = run_central_spin_scenario(
        p.case,
        K=p.K,
        rng=RngStream(seed),
        omega=p.omega,
        h_bar=p.h_bar,
        delta_dist=p.delta_dist,
        coherent_shift=p.coherent_shift,
        n_points=p.n_points,
        omega_t_max=p.omega_t_max,
        threshold=p.threshold,
        mc_spec=spec,
        delta_sq_mean=p.delta_sq_mean,
    )
    columns: dict[str, np.ndarray] = {"t": run.me.times}
    for source, record in (("me", run.me), ("mc", run.mc)):
        bloch = record.bloch()
        for i, name in enumerate(COMPONENTS):
            columns[f"{name}_{source}"] = bloch[:, i]
        columns[f"purity_{source}"] = record.purity()
    for i, name in enumerate(COMPONENTS):
        columns[f"{name}_mc_stderr"] = run.mc.stderr[:, i]
    columns["purity_mc_stderr"] = run.mc.purity_stderr()
    columns["validity"] = run.me.validity
    return CsvTable.from_columns("central_spin", columns, {"t": "time"})


def _dirac_tables(p: DiracParameters, seed: int, workers: int | None) -> list[CsvTable]:
    spec = None
    if workers and p.grid_realizations:
        spec = MonteCarloSpec(realizations=p.grid_realizations, max_workers=workers)
    run = run_dirac_scenario(
        p0=p.p0,
        c0=p.c0,
        ell=p.ell,
        sigma=p.sigma,
        t_max=p.t_max,
        n_times=p.n_times,
        h_bar=p.h_bar,
        v=p.v,
        x0=p.x0,
        kernel_mode=p.kernel_mode,
        momentum_times=tuple(p.momentum_times) if p.momentum_times is not None else None,
        char_grid=CharacteristicGridSpec(n_s=p.n_s, n_q=p.n_q),
        grid_realizations=p.grid_realizations,
        grid_points=p.grid_points,
        grid_dt=p.dt,
        rng=RngStream(seed),
        mc_spec=spec,
    )
    columns = {
        "t": run.times,
        "x_mean": run.x_mean,
        "x_mean_closed_form": run.x_mean_closed_form,
        "purity": run.purity,
        "backscatter_weight": run.backscatter_weight,
        "norm": run.norm,
    }
    if run.grid is not None:
        columns["x_mean_grid"] = run.grid.mean_position
        columns["x_mean_grid_stderr"] = run.grid.stderr["mean_position"]
        columns["backscatter_weight_grid"] = run.grid.backscatter_weight
        columns["backscatter_weight_grid_stderr"] = run.grid.stderr["backscatter_weight"]
    length = "h_bar/momentum"
    time_table = CsvTable.from_columns(
        "dirac_time", columns, {"t": "time", "x_mean": length, "x_mean_closed_form": length}
    )

    t_col, p_col, up, down = [], [], [], []
    for t, (p_grid, p_plus, p_minus) in run.snapshots.items():
        t_col.append(np.full(p_grid.shape[0], t))
        p_col.append(p_grid)
        up.append(p_plus)
        down.append(p_minus)
    momentum_table = CsvTable.from_columns(
        "dirac_momentum",
        {
            "t": np.concatenate(t_col),
            "p": np.concatenate(p_col),
            "P_up": np.concatenate(up),
            "P_down": np.concatenate(down),
        },
        {"t": "time", "p": "momentum", "P_up": "1/momentum", "P_down": "1/momentum"},
    )
    return [time_table, momentum_table]


def resolve_workers(requested: int | None) -> int | None:
    """Requested worker count capped by ``DDQE_THREADS``; the cap alone when nothing is requested."""
    cap = worker_count()
    if requested is None:
        return cap
    return requested if cap is None else min(requested, cap)


def run_scenario(cfg: RunConfig, max_workers: int | None = None) -> dict[str, CsvTable]:
    """Run the configured scenario and return its tables by name."""
    workers = resolve_workers(max_workers if max_workers is not None else cfg.workers)
    logger.info("scenario start", extra={"scenario": cfg.scenario, "seed": cfg.seed})
    if cfg.scenario == "central-spin":
        tables = [_central_spin_table(cfg.central_spin, cfg.seed, workers)]
    elif cfg.scenario == "dirac":
        tables = _dirac_tables(cfg.dirac, cfg.seed, workers)
    else:
        pipeline = ValidationPipeline()
        pipeline.run(quick=cfg.validate_.quick, seed=cfg.seed)
        tables = [pipeline.table()]
    logger.info("scenario finished", extra={"scenario": cfg.scenario, "tables": [t.name for t in tables]})
    return {table.name: table for table in tables}


def breached(tables: dict[str, CsvTable]) -> bool:
    """True if any table flags a point outside the validity window or a failed check."""
    for table in tables.values():
        if "validity" in table.columns and (table.column("validity") == 0).any():
            return True
        if "passed" in table.columns and (table.column("passed") == 0).any():
            return True
    return False


def write_outputs(cfg: RunConfig, tables: dict[str, CsvTable], output_dir: str | Path | None = None) -> list[Path]:
    out = Path(output_dir or cfg.output_dir)
    paths = []
    for name, table in tables.items():
        paths.append(table.write(out / f"{name}.csv"))
        if cfg.emit_svg and name in PLOTS:
            x, series = PLOTS[name]
            svg_path = out / f"{name}.svg"
            emit_svg(table, x, series, svg_path)
            paths.append(svg_path)
    return paths
