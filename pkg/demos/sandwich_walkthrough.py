"""
The sandwich inequality, end to end
===================================

One depth of the whole argument: a brute-force raster of the preimage
difference set from below, the union of difference disks from above,
and the closed-form worst case on top.  Writes the three masks as PGM
files next to this script.
"""

from pathlib import Path

from cantordiff import (
    Parameter,
    difference_cover,
    difference_measure_bound,
    generate_pieces,
    mask_area,
    mask_difference,
    piece_disks,
    rasterize_preimage,
    sum_area,
    union_area_grid,
)
from cantordiff.images import write_pgm

p = Parameter(5.0)
depth = 2          # piece depth; the pieces tile the (depth+1)-fold preimage
cell = 0.02
out = Path(__file__).resolve().parent

# lower estimate: rasterize the preimage, difference it against itself
inner = rasterize_preimage(p, depth + 1, cell)
diff_mask = mask_difference(inner, inner)
raster = mask_area(diff_mask)
write_pgm(inner, out / "preimage.pgm", extra={"depth": depth + 1})
write_pgm(diff_mask, out / "difference.pgm")

# upper estimate: enclosing disks of every piece, all pairwise
# difference disks, then a dilated union grid with an explicit margin
pieces = generate_pieces(p, depth, samples=512)
disks = piece_disks(pieces)
diff_disks = difference_cover(disks)
grid = union_area_grid(diff_disks, cell)
total = sum_area(diff_disks)

# closed form: 12 pi 4^n K_n^2 with the certified base diameter
worst = difference_measure_bound(p, depth).bound

print(f"c = {p.c}, piece depth {depth}, cell {cell}")
print(f"raster lower estimate   {raster:.6f}")
print(f"union-of-disks estimate {grid.area:.6f} (margin {grid.margin:.6f})")
print(f"sum of disk areas       {total:.6f}")
print(f"worst-case closed form  {worst:.6f}")
assert raster <= grid.area <= total + grid.margin <= worst
print("sandwich holds: raster <= union <= sum + margin <= worst case")
