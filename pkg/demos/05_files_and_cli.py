"""
Design files and the command line
=================================

Designs round-trip through a plain text format, and the ``lkts`` command
wraps construction, verification and lookup.
"""

# %%
import tempfile
from pathlib import Path

from lkts.cli import main
from lkts.construction import Construction
from lkts.designfile import parse_design, render_design

ctx = Construction.from_spec(7, 2, "builtin:lkts9")
text = render_design(ctx.design0, ctx.space)
print(text[:300])
d, S, fmt = parse_design(text)
print("round trip:", render_design(d, S, fmt) == text)

# %%
# The same calls the shell command makes.
out = Path(tempfile.mkdtemp())
main(["construct", "--q", "7", "--n", "2", "--base", "builtin:lkts9", "--all", "--out", str(out)])
main(["verify", "--files", str(out / "B_*.txt"), "--level", "lkts"])

# %%
# The order-171 design in the two-character point notation.
main(["construct", "--q", "13", "--n", "2", "--w", "0:0", "--format", "appendix", "--out", str(out)])
print((out / "B_0_0.txt").read_text()[:200])

# %%
main(["locate", "--q", "13", "--n", "2", "--triple", "1:1 3:9 9:3"])
main(["info", "--q", "25"])
