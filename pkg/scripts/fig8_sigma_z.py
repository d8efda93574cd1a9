"""sigma_z protocol keeping tau >= 0.8 for (phi, varphi, r) = (0.36, 1.2, 2)."""
from script_io import out_dir, write_csv
from ghzrate.cli import CSV_COLUMNS, timeline_rows
from ghzrate.protocols import run_sigma_z_protocol, verify_timeline
from ghzrate.state import HamiltonianParams, make_state

H = HamiltonianParams(2.0, 1.0)
tl = run_sigma_z_protocol(make_state(0.36, 1.2), H, 0.8, horizon=3.0, sample_dt=0.005)
write_csv(out_dir(__doc__) / "fig8_sigma_z.csv", timeline_rows(tl), CSV_COLUMNS)
chk = verify_timeline(tl, 0.8)
print(f"  delta_t = {tl.delta_t:.6f}, ops = {tl.op_count}, floor from t = {tl.guard_from:.5f}: "
      f"{chk.tau_floor:.9f} ({'ok' if chk.ok else 'violated'})")
