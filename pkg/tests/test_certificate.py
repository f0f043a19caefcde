import pytest

from capcup import (
    CAP,
    CUP,
    Certificate,
    Chain,
    Configuration,
    GonWitness,
    InterweavedPair,
    LacedCup,
    ParseError,
    find_gon,
    find_interweaved_laced_pair,
    format_certificate,
    full_grid_family,
    parse_certificate,
    verify_certificate,
)


def cup(*vs):
    return Chain(CUP, vs)


@pytest.fixture
def five(cfg6):
    return cfg6.restrict(range(5))[0]


def test_round_trip_all_kinds(cfg6, five):
    certs = [
        find_gon(five, 4),
        find_gon(Configuration.from_string(5, "A" * 10), 4),
        find_gon(Configuration.from_string(5, "U" * 10), 4),
        Certificate("laced-pair", find_interweaved_laced_pair(five, 4), 4, 4, 4),
        Certificate("k-family", full_grid_family(cfg6, 4), 4, 4, 4),
    ]
    kinds = [c.kind for c in certs]
    assert kinds == ["gon", "cap-witness", "cup-witness", "laced-pair", "k-family"]
    for cert in certs:
        text = format_certificate(cert)
        assert parse_certificate(text) == cert
        assert format_certificate(parse_certificate(text)) == text


def test_gon_format(five):
    text = format_certificate(Certificate("gon", GonWitness(Chain(CAP, (1, 3, 4)), cup(1, 2, 4)), 4, 4, 4))
    assert text == "certificate gon n 4 a 4 b 4\ngon strong 3 3\ncap 1 3 4\ncup 1 2 4\n"
    assert verify_certificate(five, parse_certificate(text)) == (True, None)


def test_flipped_chain_reports_triple(five):
    cert = Certificate("gon", GonWitness(Chain(CAP, (1, 2, 4)), cup(1, 2, 4)), 4, 4, 4)
    ok, reason = verify_certificate(five, cert)
    assert not ok and "triple 1 2 4" in reason


def test_lacing_sum_checked(cfg6):
    fam = full_grid_family(cfg6, 4)
    short = LacedCup(fam[0].cup, Chain(CUP, fam[0].left.vertices[-1:]), Chain(CUP, fam[0].right.vertices[:1]))
    ok, reason = verify_certificate(cfg6, Certificate("laced-pair", InterweavedPair(short, fam[1]), 4, 4, 4))
    assert not ok and "lacing sum" in reason


def test_interweaving_checked(cfg6):
    fam = full_grid_family(cfg6, 4)
    ok, reason = verify_certificate(cfg6, Certificate("laced-pair", InterweavedPair(fam[1], fam[0]), 4, 4, 4))
    assert not ok and "interweaved" in reason


def test_gon_endpoints_and_sizes(five):
    bad = GonWitness(Chain(CAP, (0, 1, 2)), cup(1, 2, 4))
    assert "endpoints" in verify_certificate(five, Certificate("gon", bad, 4, 4, 4))[1]
    ok, reason = verify_certificate(five, Certificate("gon", GonWitness(Chain(CAP, (1, 3, 4)), cup(1, 2, 4)), 5, 4, 5))
    assert not ok and "gon sizes" in reason


def test_out_of_range_vertex(five):
    ok, reason = verify_certificate(five, Certificate("cap-witness", Chain(CAP, (0, 1, 2, 9)), 4, 4, 4))
    assert not ok and "out of range" in reason


@pytest.mark.parametrize(
    "text",
    [
        "",
        "certificate gon n 4 a 4\n",
        "certificate blob n 4 a 4 b 4\n",
        "certificate gon n x a 4 b 4\n",
        "certificate gon n 4 a 4 b 4\ncap 0 1 2\n",
        "certificate laced-pair n 4 a 4 b 4\nlaced\ncup 0 1\n",
        "certificate k-family n 4 a 4 b 4\nfamily 2\nlaced\ncup 0 1 2\ncup 0\ncup 2 3\n",
        "certificate cap-witness n 4 a 4 b 4\ncap 2 1\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_certificate(text)
