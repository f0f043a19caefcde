"""
Gon certificates
================

Every configuration on C(n-1, 2) + 2 points has a 4-cap, an n-cup or a
(3, n-1)-gon.  find_gon builds one; verify_certificate re-checks it from
the raw triples without trusting the construction.
"""

from math import comb

from capcup import (
    configuration_from_points,
    find_gon,
    find_interweaved_laced_pair,
    format_certificate,
    parse_certificate,
    random_point_set,
    realizable_free_sample,
    verify_certificate,
)
from capcup.certificate import Certificate

n = 7
size = comb(n - 1, 2) + 2
config = configuration_from_points(random_point_set(size, seed=2024))
cert = find_gon(config, n)
print(format_certificate(cert))
print("verified:", verify_certificate(config, cert))

# a cap/cup free sample forces the gon route through two laced cups
free = realizable_free_sample(n, size, seed=5)
pair = find_interweaved_laced_pair(free, n)
print(format_certificate(Certificate("laced-pair", pair, n, 4, n)))
gon = find_gon(free, n)
print(gon.kind, verify_certificate(free, gon))

# certificates round-trip through text; a tampered one is rejected
text = format_certificate(gon)
assert parse_certificate(text) == gon
print(text)
tampered = parse_certificate(text.replace("\ncap ", "\ncup ", 1))
print("tampered:", verify_certificate(free, tampered))
