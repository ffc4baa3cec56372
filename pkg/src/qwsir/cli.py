"""Command-line interface.

Subcommands: ``walk`` (dump walk position distributions), ``run`` (one
epidemic realization with snapshot frames), ``r0`` (reproduction-number
sweeps and the quantum/classical comparison report), ``cluster``
(visited-cluster growth against agent count), ``verify`` (built-in golden
checks).

Option precedence is CLI flag > config file (``--config``) > built-in
default.  Every command that writes files also writes ``manifest.txt``
recording the effective configuration; re-running the same subcommand
with ``--config manifest.txt`` reproduces the CSV outputs byte for byte.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 I/O failure.
"""

from __future__ import annotations

import os
import sys
from argparse import ArgumentParser
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, analysis, verify
from .coins import embed_dft3_gate, make_dft_coin, make_hadamard_coin
from .epidemic import POLICIES, ConfigError, EpidemicConfig, run_realization
from .render import render_snapshot, write_ppm
from .rng import derive_seed
from .walk import WalkSpec, build_walk, position_distribution, step

__all__ = ["main", "entrypoint", "derive_seed"]

_COMMON_DEFAULTS = {
    "seed": "0",
    "threads": str(os.cpu_count() or 1),
    "out": ".",
}

DEFAULTS = {
    "walk": {
        **_COMMON_DEFAULTS,
        "geometry": "cycle",
        "size": "8",
        "lx": "4",
        "ly": "4",
        "dim": "3",
        "coin": "",
        "steps": "5",
        "start": "0",
        "initial-coin": "",
        "per-step": "false",
    },
    "run": {
        **_COMMON_DEFAULTS,
        "l": "64",
        "n": "4096",
        "p": "1",
        "tau": "2",
        "policy": "classical",
        "initial-site": "0,0",
        "initial-coin": "",
        "snapshot-every": "0",
        "shots": "exact",
        "boundary": "torus",
        "neighborhood": "cardinal",
        "max-steps": "",
        "log": "false",
    },
    "r0": {
        **_COMMON_DEFAULTS,
        "l": "64",
        "n": "4096",
        "p-list": "1,0.5,0.25,0.125,0.0625",
        "tau-list": "1,2,3",
        "policy": "classical",
        "runs": "2000",
        "shots": "exact",
        "boundary": "torus",
        "neighborhood": "cardinal",
    },
    "cluster": {
        **_COMMON_DEFAULTS,
        "l": "32",
        "n-list": "32,128,512,1024",
        "p": "1",
        "tau": "3",
        "policy": "quantum-histogram",
        "runs": "200",
        "shots": "exact",
        "boundary": "torus",
        "neighborhood": "cardinal",
    },
    "verify": {},
}


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _parse_bool(s: str) -> bool:
    if s.lower() in ("true", "1", "yes"):
        return True
    if s.lower() in ("false", "0", "no", ""):
        return False
    raise ConfigError(f"expected a boolean, got {s!r}")


def _parse_shots(s: str):
    if s in ("exact", ""):
        return None
    return int(s)


def _parse_site(s: str) -> tuple[int, int]:
    parts = s.split(",")
    if len(parts) != 2:
        raise ConfigError(f"expected 'x,y', got {s!r}")
    return int(parts[0]), int(parts[1])


def _parse_coin_vector(s: str):
    if not s:
        return None
    return np.array([complex(part) for part in s.split(",")])


def load_config_file(path) -> dict:
    """Read a flat ``key = value`` config file (# starts a comment)."""
    opts = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"bad config line (expected 'key = value'): {raw!r}")
        key, value = line.split("=", 1)
        opts[key.strip()] = value.strip()
    return opts


def _effective_options(command: str, cli_opts: dict) -> dict:
    opts = dict(DEFAULTS[command])
    config_path = cli_opts.pop("config", None)
    if config_path:
        file_opts = load_config_file(config_path)
        recorded = file_opts.pop("command", command)
        if recorded != command:
            raise ConfigError(
                f"config file was written by the {recorded!r} command, not {command!r}"
            )
        unknown = set(file_opts) - set(opts)
        if unknown:
            raise ConfigError(f"unknown config keys for {command!r}: {sorted(unknown)}")
        opts.update(file_opts)
    for key, value in cli_opts.items():
        if value is not None:
            opts[key] = value
    return opts


def write_manifest(out_dir: Path, command: str, opts: dict, outputs: list, argv: list) -> None:
    lines = [
        "# qwsir manifest",
        f"# version: {__version__}",
        f"# created: {datetime.now(timezone.utc).isoformat(timespec='seconds')}",
        f"# argv: {' '.join(argv)}",
        f"command = {command}",
    ]
    lines += [f"{key} = {opts[key]}" for key in sorted(opts)]
    lines.append("# outputs:")
    lines += [f"#   {name}" for name in outputs]
    (out_dir / "manifest.txt").write_text("\n".join(lines) + "\n")


def _out_dir(opts: dict) -> Path:
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _pick_walk_coin(geometry: str, name: str, dim: int):
    if not name:
        name = {"cycle": "hadamard", "line": "hadamard", "torus": "hadamard", "hypercube": "dft"}[
            geometry
        ]
    if geometry in ("cycle", "line"):
        if name == "hadamard":
            return make_hadamard_coin(1)
        if name == "dft":
            return make_dft_coin(2)
    elif geometry == "torus":
        if name == "hadamard":
            return make_hadamard_coin(2)
        if name == "dft":
            return make_dft_coin(4)
    elif geometry == "hypercube":
        if name == "dft":
            return make_dft_coin(dim)
        if name == "dft-embedded":
            if dim != 3:
                raise ConfigError("the embedded Fourier coin exists for dimension 3 only")
            return embed_dft3_gate()
    raise ConfigError(f"coin {name!r} cannot drive a {geometry!r} walk")


def cmd_walk(opts: dict, argv: list) -> int:
    geometry = opts["geometry"]
    steps = int(opts["steps"])
    coin_state = _parse_coin_vector(opts["initial-coin"])
    dim = int(opts["dim"])
    coin = _pick_walk_coin(geometry, opts["coin"], dim)
    if geometry in ("cycle", "line"):
        size = int(opts["size"])
        if geometry == "line" and size <= 2 * steps:
            raise ConfigError(f"line extent {size} would wrap within {steps} steps")
        spec = WalkSpec((geometry, size), coin, int(opts["start"]), coin_state)
        if geometry == "line":
            labels = list(range(-(size // 2), size - size // 2))
            order = [(int(opts["start"]) + lab) % size for lab in labels]
            labels = [str(lab) for lab in labels]
        else:
            labels = [str(i) for i in range(size)]
            order = list(range(size))
    elif geometry == "torus":
        lx, ly = int(opts["lx"]), int(opts["ly"])
        sx, sy = _parse_site(opts["start"]) if "," in opts["start"] else (int(opts["start"]), 0)
        spec = WalkSpec(("torus2d", lx, ly), coin, sx * ly + sy, coin_state)
        labels = [f"{i // ly}:{i % ly}" for i in range(lx * ly)]
        order = list(range(lx * ly))
    elif geometry == "hypercube":
        spec = WalkSpec(("hypercube", dim), coin, int(opts["start"]), coin_state)
        labels = [format(i, f"0{dim}b") for i in range(2**dim)]
        order = list(range(2**dim))
    else:
        raise ConfigError(f"unknown geometry {opts['geometry']!r}")

    u, state = build_walk(spec)
    per_step = _parse_bool(opts["per-step"])
    out = _out_dir(opts)
    rows = ["t,position,probability"]
    outputs = ["distribution.csv"]
    for t in range(steps + 1):
        dist = position_distribution(state)
        step_rows = [f"{t},{labels[i]},{_fmt(float(dist[order[i]]))}" for i in range(len(order))]
        rows += step_rows
        if per_step:
            name = f"dist_{t:04}.csv"
            (out / name).write_text("\n".join(["t,position,probability"] + step_rows) + "\n")
            outputs.append(name)
        if t < steps:
            state = step(state, u)
    (out / "distribution.csv").write_text("\n".join(rows) + "\n")
    write_manifest(out, "walk", opts, outputs, argv)
    return 0


def _epidemic_config(opts: dict) -> EpidemicConfig:
    max_steps = opts.get("max-steps", "")
    return EpidemicConfig(
        L=int(opts["l"]),
        N=int(opts["n"]),
        p=float(opts["p"]),
        tau=int(opts["tau"]),
        policy=opts["policy"],
        initial_site=_parse_site(opts.get("initial-site", "0,0")),
        initial_coin=_parse_coin_vector(opts.get("initial-coin", "")),
        seed=int(opts["seed"]),
        max_steps=int(max_steps) if max_steps else None,
        shots=_parse_shots(opts["shots"]),
        boundary=opts["boundary"],
        neighborhood=opts["neighborhood"],
    )


def cmd_run(opts: dict, argv: list) -> int:
    config = _epidemic_config(opts)
    every = int(opts["snapshot-every"])
    out = _out_dir(opts)
    outputs = []
    written = []

    def snapshot(lattice):
        t = lattice.step_count
        if t == 0 or (every > 0 and t % every == 0):
            name = f"frame_{t:06}.ppm"
            write_ppm(render_snapshot(lattice), out / name)
            written.append(t)
            outputs.append(name)

    final = {}

    def on_tick(lattice):
        snapshot(lattice)
        final["lattice"] = lattice

    stats = run_realization(config, on_tick=on_tick)
    lattice = final["lattice"]
    if lattice.step_count not in written:
        name = f"frame_{lattice.step_count:06}.ppm"
        write_ppm(render_snapshot(lattice), out / name)
        outputs.append(name)

    header = (
        "first_generation_infections,total_infections,cluster_size_M,"
        "steps_to_extinction,peak_active_walkers"
    )
    row = (
        f"{stats.first_generation_infections},{stats.total_infections},"
        f"{stats.cluster_size_M},{stats.steps_to_extinction},{stats.peak_active_walkers}"
    )
    (out / "stats.csv").write_text(f"{header}\n{row}\n")
    outputs.append("stats.csv")
    if _parse_bool(opts["log"]):
        lines = ["step,infector_id,site_x,site_y,generation"]
        lines += [f"{s},{w},{x},{y},{g}" for (s, w, x, y, g) in lattice.infection_log]
        (out / "infections.csv").write_text("\n".join(lines) + "\n")
        outputs.append("infections.csv")
    write_manifest(out, "run", opts, outputs, argv)
    print(f"extinct after {stats.steps_to_extinction} steps: {row}")
    return 0


def _sweep_kwargs(opts: dict) -> dict:
    return {
        "L": int(opts["l"]),
        "runs": int(opts["runs"]),
        "seed": int(opts["seed"]),
        "threads": int(opts["threads"]),
        "shots": _parse_shots(opts["shots"]),
        "boundary": opts["boundary"],
    }


def cmd_r0(opts: dict, argv: list) -> int:
    p_list = [float(x) for x in opts["p-list"].split(",")]
    tau_list = [int(x) for x in opts["tau-list"].split(",")]
    policies = [s.strip() for s in opts["policy"].split(",")]
    for policy in policies:
        if policy not in POLICIES:
            raise ConfigError(f"unknown policy {policy!r}; choose from {POLICIES}")
    out = _out_dir(opts)
    outputs = []
    tables = {}
    kwargs = _sweep_kwargs(opts)
    kwargs["N"] = int(opts["n"])
    for policy in policies:
        neighborhood = opts["neighborhood"] if policy == "classical" else "cardinal"
        tables[policy] = analysis.r0_sweep(
            p_list, tau_list, policy, neighborhood=neighborhood, **kwargs
        )
        name = f"r0_{policy}.csv"
        (out / name).write_text(analysis.r0_table_csv(tables[policy]))
        outputs.append(name)
    classical = [p for p in policies if p == "classical"]
    quantum = [p for p in policies if p != "classical"]
    if len(policies) == 2 and len(classical) == 1 and len(quantum) == 1:
        rows = analysis.summarize_comparison(tables[quantum[0]], tables[classical[0]])
        (out / "comparison.csv").write_text(analysis.comparison_csv(rows))
        outputs.append("comparison.csv")
    write_manifest(out, "r0", opts, outputs, argv)
    return 0


def cmd_cluster(opts: dict, argv: list) -> int:
    n_list = [int(x) for x in opts["n-list"].split(",")]
    kwargs = _sweep_kwargs(opts)
    points = analysis.cluster_growth(
        n_list,
        p=float(opts["p"]),
        tau=int(opts["tau"]),
        policy=opts["policy"],
        neighborhood=opts["neighborhood"],
        **kwargs,
    )
    out = _out_dir(opts)
    (out / "cluster.csv").write_text(analysis.cluster_csv(points))
    write_manifest(out, "cluster", opts, ["cluster.csv"], argv)
    return 0


def cmd_verify(opts: dict, argv: list) -> int:
    results = verify.run_verification()
    print(verify.format_report(results))
    return 0 if all(r.passed for r in results) else 1


def _build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="qwsir", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for command, defaults in DEFAULTS.items():
        p = sub.add_parser(command)
        if defaults:
            p.add_argument("--config", help="flat key = value config file")
        for key, default in defaults.items():
            if key in ("per-step", "log"):
                p.add_argument(f"--{key}", nargs="?", const="true", help=f"default: {default}")
            else:
                p.add_argument(f"--{key}", help=f"default: {default}")
    return parser


_COMMANDS = {
    "walk": cmd_walk,
    "run": cmd_run,
    "r0": cmd_r0,
    "cluster": cmd_cluster,
    "verify": cmd_verify,
}


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = vars(_build_parser().parse_args(argv))
    command = args.pop("command")
    try:
        opts = _effective_options(command, {k.replace("_", "-"): v for k, v in args.items()})
        return _COMMANDS[command](opts, argv)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    raise SystemExit(main())
