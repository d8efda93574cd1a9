"""t_max, Gamma_0 and t'_max/t_max maps over (phi, b) at r = 2."""
from script_io import out_dir, write_csv
from ghzrate.cli import heatmap_rows
from ghzrate.state import HamiltonianParams

H = HamiltonianParams(2.0, 1.0)
out = out_dir(__doc__)
for kind, fig in (("tmax", "fig1"), ("gamma0", "fig3"), ("ratio", "fig4")):
    write_csv(out / f"{fig}_{kind}.csv", heatmap_rows(kind, "phi-b", 101, 101, H), ["x", "y", "value"])
