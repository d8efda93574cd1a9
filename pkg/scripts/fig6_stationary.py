"""Stationary-state protocol for (phi, varphi, r) = (0.36, 1.107, 2) at several delays."""
from script_io import out_dir, write_csv
from ghzrate.cli import CSV_COLUMNS, timeline_rows
from ghzrate.protocols import run_stationary_protocol
from ghzrate.state import HamiltonianParams, make_state

H = HamiltonianParams(2.0, 1.0)
s0 = make_state(0.36, 1.107)
out = out_dir(__doc__)
for delay in (0.0, 0.1, 0.2):
    tl = run_stationary_protocol(s0, H, delay, horizon=2.0, sample_dt=0.005)
    t_apply = tl.ops[-1][0]
    floor = min(pt.tau for pt in tl.points if pt.t_tilde >= t_apply)
    write_csv(out / f"fig6_delay{delay:.1f}.csv", timeline_rows(tl), CSV_COLUMNS)
    print(f"  delay {delay}: R_s at {t_apply:.5f}, floor afterwards {floor:.9f}")
