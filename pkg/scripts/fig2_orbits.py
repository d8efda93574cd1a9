"""Free evolution of tau for two phi = pi/4 states at r = 2 (varphi = 0 and pi/3)."""
import math

from script_io import out_dir, write_csv
from ghzrate.cli import CSV_COLUMNS, timeline_rows
from ghzrate.protocols import free_timeline
from ghzrate.state import HamiltonianParams, make_state

H = HamiltonianParams(2.0, 1.0)
out = out_dir(__doc__)
for name, vp in (("green", 0.0), ("pink", math.pi / 3)):
    tl = free_timeline(make_state(math.pi / 4, vp), H, horizon=2.0, sample_dt=0.005)
    write_csv(out / f"fig2_{name}.csv", timeline_rows(tl), CSV_COLUMNS)
    print(f"  {name}: min tau = {tl.tau_floor:.9f}")
