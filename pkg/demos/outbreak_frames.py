"""One epidemic realization, rendered frame by frame.

A 64x64 fully occupied lattice starts with a single infected walker at
the origin.  Every infection spawns a new walker that roams for tau
steps, so the outbreak branches until it runs out of susceptible
neighbours.  Frames are written as PPM images (red = active walkers,
green = removed, yellow = visited, blue = susceptible) into
``outbreak_frames/``; view them with any image tool or stitch them into
an animation.
"""

from pathlib import Path

from qwsir import EpidemicConfig, render_snapshot, run_realization, write_ppm

out = Path("outbreak_frames")
out.mkdir(exist_ok=True)

config = EpidemicConfig(
    L=64, N=4096, p=0.8, tau=3, policy="quantum-histogram", seed=11,
    initial_site=(32, 32),
)

EVERY = 5
written = []


def snapshot(lattice):
    if lattice.step_count % EVERY == 0 or not lattice.walkers:
        path = out / f"frame_{lattice.step_count:06}.ppm"
        write_ppm(render_snapshot(lattice), path)
        written.append(path.name)


stats = run_realization(config, on_tick=snapshot)

print(f"policy: {config.policy}, p={config.p}, tau={config.tau}")
print(f"index case infected {stats.first_generation_infections} sites directly")
print(f"total infections: {stats.total_infections} of {config.N - 1} susceptible agents")
print(f"visited-cluster size M = {stats.cluster_size_M}")
print(f"extinct after {stats.steps_to_extinction} steps, "
      f"peak {stats.peak_active_walkers} simultaneous walkers")
print(f"wrote {len(written)} frames to {out}/")
