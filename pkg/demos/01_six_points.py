"""
Six points, their labels and the (alpha, beta)-plane
====================================================

Ingest a small point set, compute the canonical slope labeling and the
alpha-statistic, and draw the plane in text and SVG.
"""

from pathlib import Path

from capcup import (
    alpha_beta_plane,
    alpha_statistic,
    canonical_labeling,
    configuration_from_points,
    format_configuration,
    render_ascii,
    render_svg,
    validate_labeling,
)

# exact rationals are fine as strings
points = [(-4, 0), ("-3/2", -1), ("-1/2", -3), ("1/2", 3), ("3/2", 1), (4, 0)]
names = "ABCDEF"
config = configuration_from_points(points)
print(format_configuration(config))

labels = canonical_labeling(config, 4)
for (u, v), s in labels.items():
    print(f"{names[u]}{names[v]} -> {s}")
print("valid slope labeling:", validate_labeling(config, labels))

stat = alpha_statistic(config, labels, 4)
for v, cell in enumerate(stat.values):
    print(names[v], cell)

plane = alpha_beta_plane(config, 4)
print(render_ascii(plane))

out = Path(__file__).with_name("six_points.svg")
out.write_text(render_svg(plane))
print("wrote", out.name)
