"""Acceptance criteria.

Each test prints exactly one ``[ACCEPTANCE] <name>: PASS|FAIL`` line and then
asserts.  Two criteria assert depth-separation strengths that the measures in
question do not actually have; those tests implement the stated check
faithfully, print FAIL with the exactly computed value, and are expected to
stay red.  See the README's "Known failing acceptance checks" note.
"""

import random
import time
from fractions import Fraction as F

import pytest

from cmc import (
    AtomWitness,
    Convex,
    Diagnostic,
    Dirac,
    Modulus,
    OrthoCertificate,
    ProductCode,
    TableCode,
    Uniform,
    ZEROS,
    ONES,
    build_family,
    continuity_modulus,
    decode,
    density,
    ei_divergence_certificate,
    ei_partial_sum,
    encode,
    enumerate_dense,
    gap,
    ks_schedule,
    measure_of_family,
    metric_bracket,
    offspine_decomposition,
    parse,
    perfect_family,
    print_measure,
    product_code,
    spine,
    validate_additivity,
)
from cmc.bits import all_strings_of_length
from cmc.cli import main as cli_main
from cmc.kakutani import DivergenceCertificate
from cmc.schedules import ConstantSchedule

from corpusgen import MALFORMED, corpus


def _verdict(name, ok, detail=""):
    line = f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def _random_table(rng, depth=6):
    entries = {}
    frontier = {"": F(1)}
    for _ in range(depth):
        nxt = {}
        for s, m in frontier.items():
            num = rng.randrange(1, 16)
            nxt[s + "0"] = entries[s + "0"] = m * F(num, 16)
            nxt[s + "1"] = entries[s + "1"] = m * F(16 - num, 16)
        frontier = nxt
    return TableCode(depth, entries)


def _bases():
    rng = random.Random(40961)
    out = [Uniform()]
    for p in [F(1, 3), F(1, 4), F(2, 5), F(3, 7), F(5, 8)]:
        out.append(ProductCode(ConstantSchedule(p)))
    for _ in range(10):
        out.append(_random_table(rng))
    for _ in range(5):
        parts = [ProductCode(ConstantSchedule(F(rng.randrange(1, 7), 7))), Uniform()]
        w = F(rng.randrange(1, 12), 12)
        out.append(Convex([(w, parts[0]), (1 - w, parts[1])]))
    return out


@pytest.fixture(scope="module")
def codec_cases():
    rng = random.Random(65537)
    bases = _bases()
    cases = []
    start = time.monotonic()
    for i in range(100):
        base = bases[i % len(bases)]
        payload = "".join(rng.choice("01") for _ in range(64))
        g = encode(base, payload)
        decoded = decode(g, 64)
        cases.append({"base": base, "payload": payload, "g": g, "decoded": decoded})
    return {"cases": cases, "elapsed": time.monotonic() - start}


def test_codec_round_trip(codec_cases):
    ok = all(c["decoded"] == c["payload"] for c in codec_cases["cases"])
    fast = codec_cases["elapsed"] < 60
    _verdict(
        "codec-round-trip",
        ok and fast,
        f"100 cases in {codec_cases['elapsed']:.1f}s",
    )


def test_measure_class_evidence(codec_cases):
    ok = True
    level12 = [s for n in range(13) for s in all_strings_of_length(n)]
    for c in codec_cases["cases"]:
        f, g = c["base"], c["g"]
        ok = ok and all((g.mass(s) == 0) == (f.mass(s) == 0) for s in level12)
        ok = ok and validate_additivity(g, 12) == "ok"
        for root in offspine_decomposition(f, 12):
            theta = density(g, root)
            ok = ok and all(
                g.mass(u) == theta * f.mass(u)
                for u in level12
                if u.startswith(root)
            )
        if not ok:
            break
    _verdict("measure-class-evidence", ok)


def test_spine_preservation(codec_cases):
    ok = all(
        spine(c["g"], 12).nodes == spine(c["base"], 12).nodes
        for c in codec_cases["cases"]
    )
    _verdict("spine-preservation", ok)


def test_gap_closed_form():
    mu, nu = Dirac("0"), Uniform()
    ok = all(gap(mu, nu, d) == 1 - F(1, 1 << d) for d in range(1, 21))
    for d in range(1, 13):
        brute = sum(
            max(nu.mass(s) - mu.mass(s), F(0)) for s in all_strings_of_length(d)
        )
        ok = ok and brute == 1 - F(1, 1 << d)
    _verdict("gap-closed-form", ok)


def test_kakutani_divergence_certificate():
    cert = ei_divergence_certificate(ZEROS, ONES, 9, 10**4)
    ok = isinstance(cert, DivergenceCertificate) and cert.N <= 10**4
    if ok:
        ok = cert.partial_sum >= 9 and cert.partial_sum - F(1, cert.N) < 9
    _verdict(
        "kakutani-divergence",
        ok,
        f"N={cert.N}" if isinstance(cert, DivergenceCertificate) else "no certificate",
    )


def test_kakutani_depth40_gap():
    mu = product_code(ks_schedule(ZEROS))
    nu = product_code(ks_schedule(ONES))
    start = time.monotonic()
    g = gap(mu, nu, 40)
    elapsed = time.monotonic() - start
    ok = g >= F(9, 10) and elapsed < 300
    _verdict("kakutani-depth40-gap", ok, f"gap={float(g):.6f} in {elapsed:.0f}s")


def test_family_building():
    result = build_family(8, F(1, 100), 48, candidates=perfect_family(16))
    certs = result.certificates
    ok = len(result.measures) == 8 and len(certs) == 28
    ok = ok and all(isinstance(c, OrthoCertificate) for c in certs)
    if ok:
        members = list(result.measures)
        k = 0
        for new in range(1, 8):
            for old in range(new):
                cert = certs[k]
                k += 1
                ok = ok and measure_of_family(members[old], cert.cells) == cert.mu_mass
                ok = ok and measure_of_family(members[new], cert.cells) == cert.nu_mass
    _verdict(
        "family-building",
        ok,
        f"built {len(result.measures)} of 8 members, {len(certs)} certificates",
    )


def test_modulus():
    ok = all(
        continuity_modulus(Uniform(), F(1, 1 << k), 32) == Modulus(k + 1)
        for k in range(1, 11)
    )
    for k in range(1, 11):
        out = continuity_modulus(Dirac("0"), F(1, 1 << k), 32)
        ok = ok and isinstance(out, AtomWitness)
    _verdict("modulus", ok)


def test_metric_brackets():
    rng = random.Random(12289)
    ok = True
    for _ in range(50):
        f = enumerate_dense(rng.randrange(0, 60))
        g = _random_table(rng, depth=3) if rng.random() < 0.5 else enumerate_dense(
            rng.randrange(0, 60)
        )
        N = rng.randrange(4, 24)
        lo1, hi1 = metric_bracket(f, g, N)
        lo2, hi2 = metric_bracket(f, g, N + 8)
        ok = ok and hi1 - lo1 == F(1, 1 << N)
        ok = ok and hi2 - lo2 == F(1, 1 << (N + 8))
        ok = ok and lo2 <= hi1 and lo1 <= hi2
    _verdict("metric-brackets", ok)


def test_parser_corpus_and_cli_matrix(capsys):
    ok = True
    cases = corpus(200)
    for source, code in cases:
        reparsed = parse(source)
        ok = ok and not isinstance(reparsed, Diagnostic)
        ok = ok and print_measure(reparsed) == source
    # extensional agreement: depth <= 6 everywhere, depth <= 16 on a sample
    for source, code in cases:
        reparsed = parse(source)
        ok = ok and all(
            reparsed.mass(s) == code.mass(s)
            for n in range(7)
            for s in all_strings_of_length(n)
        )
    for source, code in cases[:5]:
        reparsed = parse(source)
        ok = ok and all(
            reparsed.mass(s) == code.mass(s) for s in all_strings_of_length(16)
        )
    for source in MALFORMED:
        out = parse(source)
        ok = ok and isinstance(out, Diagnostic) and out.line >= 1 and out.column >= 1
    matrix = [
        (0, ["eval", "uniform", "01"]),
        (0, ["gap", "dirac(0)", "uniform", "2"]),
        (0, ["certify", "dirac(0)", "uniform", "1/20", "10"]),
        (0, ["classify", "", "1*", "10000"]),
        (1, ["certify", "uniform", "product(const(1/3))", "1/20", "10"]),
        (1, ["classify", "", "(000000000001)*", "100"]),
        (1, ["refute-ac", "uniform", "uniform", "3/4", "1", "8"]),
        (2, ["eval", "unifrm", "01"]),
        (2, ["eval", "finite(0: 2/3, 1: 1/2)", "0"]),
        (2, ["decode", "uniform", "1"]),
    ]
    for expected, argv in matrix:
        got = cli_main(argv)
        capsys.readouterr()
        ok = ok and got == expected
    with capsys.disabled():
        _verdict("parser-corpus-and-cli", ok)
