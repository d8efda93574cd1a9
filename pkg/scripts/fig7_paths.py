"""Rotation-only and flip-then-rotate routes from (p, varphi) = (0.8, 1.2) at r = 2."""
import json

from script_io import out_dir
from ghzrate.optimizer import flip_decision, optimization_paths
from ghzrate.state import GHZState, HamiltonianParams

H = HamiltonianParams(2.0, 1.0)
A = GHZState(0.8, 1.2)
rep = optimization_paths(A, H)
flip = flip_decision(A, H)
data = {k: {"p": getattr(rep, k).p, "varphi": getattr(rep, k).varphi} for k in "ABCD"}
data.update(gamma0_B=rep.gamma0_B, gamma0_D=rep.gamma0_D, gamma0_A=flip.gamma0,
            gamma0_C=flip.gamma0_flip, flip_useful=flip.useful, flip_reason=flip.reason)
out = out_dir(__doc__) / "fig7_paths.json"
out.write_text(json.dumps(data, indent=2) + "\n")
print(json.dumps(data, indent=2))
