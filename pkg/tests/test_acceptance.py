"""Exit criteria. Each test records one PASS/FAIL line, printed at the end of the run."""

import math
import random
import time

from b23.codec import Container, ContainerError, compress, decompress, encode_text, stats
from b23.combinatorics import (
    PHI,
    compression_ratio_bound,
    count_no12_bruteforce,
    count_no12_closed_form,
    count_no12_recurrence,
    decay_ratio_fit,
    fibonacci_identity_check,
    frequency_mass_by_length,
    p_at_least_one_12_exact,
    proof_diagram_sum,
)
from b23.encoding import (
    B23Bitstream,
    count_12_pairs,
    decode_a23,
    decode_b23,
    encode_a23,
    encode_b23,
)
from b23.montecarlo import TritDistribution, exact_pair_moments, pair_frequency_monte_carlo
from b23.trits import TableMode, TritString, get_table, parse_trits, to_ternary

from test_codec import EXAMPLE, EXAMPLE_BITS, printed_bits

RESULTS: list[tuple[str, bool, str]] = []


def record(name, checks):
    """``checks`` maps a label to a bool; all must hold."""
    failed = [label for label, ok in checks.items() if not ok]
    detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
    if failed:
        detail += " | failed: " + "; ".join(failed)
    RESULTS.append((name, not failed, detail))
    assert not failed, f"{name}: {detail}"


def test_table_conformance(table4_rows):
    expected = printed_bits(table4_rows)
    checks = {}
    for mode in TableMode:
        table = get_table(mode)
        matched = 0
        for (sym, tern), bits in expected.items():
            code = parse_trits(tern)
            ch = table.decode(code)
            want_sym = "E" if mode is TableMode.CORRECTED and tern == "0202" else sym
            ok = ch == want_sym and encode_b23(code).bits == bits
            if table.encode(ch) == code:
                ok = ok and encode_text(ch, table).bits == bits
            matched += ok
        checks[f"{mode.value}: {matched}/81"] = matched == 81
    bold6 = [c for c in "acdehilnorstu" if len(encode_text(c).bits) == 6]
    checks["13 bold 6-bit lowercase"] = len(bold6) == 13
    checks["space -> 1111"] = encode_text(" ").bits == "1111"
    checks["e -> 010011"] = encode_text("e").bits == "010011"
    record("Table conformance (81/81)", checks)


def test_worked_numeric_examples():
    record(
        "Worked numeric examples",
        {
            # printed as 10010 in the source; base 3 of 85 is 10011 (10010 is 84)
            "to_ternary(85) == 10010": str(to_ternary(85)) == "10010",
            "to_ternary(150) == 12120": str(to_ternary(150)) == "12120",
            "A23(10010) == 0100000100": encode_a23(parse_trits("10010")).bits == "0100000100",
            "A23(12120) == 0110011000": encode_a23(parse_trits("12120")).bits == "0110011000",
            "B23(10010) == 0100000100": encode_b23(parse_trits("10010")).bits == "0100000100",
            "B23(12120) == 111100": encode_b23(parse_trits("12120")).bits == "111100",
        },
    )


def test_no12_counting_suite():
    start = time.perf_counter()
    brute_ok = all(count_no12_bruteforce(n) == count_no12_recurrence(n) for n in range(1, 15))
    brute_time = time.perf_counter() - start
    record(
        "No-12 counting suite",
        {
            "bruteforce == recurrence, n=1..14": brute_ok,
            f"bruteforce runtime {brute_time:.1f}s < 30s": brute_time < 30,
            "recurrence == rounded closed form, n=1..35": all(
                count_no12_closed_form(n).rounded == count_no12_recurrence(n) for n in range(1, 36)
            ),
            "S1..S5 == 3,8,21,55,144": [count_no12_recurrence(n) for n in range(1, 6)]
            == [3, 8, 21, 55, 144],
            "proof-diagram sum, n=3..30": all(
                proof_diagram_sum(n) == count_no12_recurrence(n) for n in range(3, 31)
            ),
            "Fibonacci identity, n=1..20": fibonacci_identity_check(20),
        },
    )


def test_pair_probability():
    ps = [p_at_least_one_12_exact(n) for n in range(1, 41)]
    ratio = decay_ratio_fit(10, 40)
    target = PHI**2 / 3
    record(
        "12-pair probability",
        {
            "P_n nondecreasing, n=1..40": all(a <= b for a, b in zip(ps, ps[1:])),
            f"decay ratio {ratio:.6f} within 1% of {target:.6f}": abs(ratio / target - 1) < 0.01,
            "P_1 == 0": ps[0] == 0,
            "P_2 == 1/9": ps[1] * 9 == 1,
        },
    )


def test_compression_ratio_bound():
    bound = compression_ratio_bound()
    masses = frequency_mass_by_length()
    record(
        "Compression-ratio bound",
        {
            f"bound {bound:.6f} within 1e-4 of 0.64577": abs(bound - 0.64577) <= 1e-4,
            f"6-bit letter mass {masses[6]:.3f} == 83.373": math.isclose(masses[6], 83.373, abs_tol=1e-9),
        },
    )


def test_worked_example_end_to_end():
    c = compress(EXAMPLE)
    s = stats(EXAMPLE)
    quoted = stats(f'"{EXAMPLE}"')
    record(
        "Worked example end-to-end",
        {
            "146 payload bits": c.payload_bit_length == 146,
            "bits equal the printed coded string": c.bits().bits == EXAMPLE_BITS,
            "baseline 200 bits": s.baseline_bits == 200,
            f"8-bit overhead {s.baseline_overhead:.1%} >= 25%": s.baseline_overhead >= 0.25,
            f"quoted reading: {quoted.b23_bits} vs {quoted.baseline_bits} bits": quoted.b23_bits == 158,
            "decompresses to the original": decompress(Container.from_bytes(c.to_bytes())) == EXAMPLE,
        },
    )


def test_property_suite():
    rng = random.Random(20261019)
    alphabet = sorted(get_table().symbols)
    codec_failures = 0
    for _ in range(10_000):
        text = "".join(rng.choices(alphabet, k=rng.randint(0, 60)))
        codec_failures += decompress(compress(text)) != text
    # a few long documents across the full length range
    for k in (1000, 5000, 10_000):
        text = "".join(rng.choices(alphabet, k=k))
        codec_failures += decompress(compress(text)) != text

    trit_failures = length_failures = 0
    for i in range(10_000):
        n = rng.randint(0, 2000) if i % 100 == 0 else rng.randint(0, 64)
        t = TritString(rng.choices((0, 1, 2), k=n))
        b = encode_b23(t)
        trit_failures += decode_b23(b) != t or decode_a23(encode_a23(t)) != t
        length_failures += b.bit_length != 2 * (len(t) - count_12_pairs(t))

    data = compress(EXAMPLE).to_bytes()
    odd = data[:6] + (145).to_bytes(8, "big") + data[14:]
    corrupt = {
        "truncation": data[:-1],
        "odd bit length": odd,
        "trit count not multiple of 4": Container.from_bits(B23Bitstream("000000")).to_bytes(),
    }
    rejected = {}
    for label, blob in corrupt.items():
        try:
            decompress(Container.from_bytes(blob))
            rejected[label] = False
        except ContainerError:
            rejected[label] = True
    checks = {
        f"codec roundtrips: {codec_failures} failures": codec_failures == 0,
        f"trit roundtrips: {trit_failures} failures": trit_failures == 0,
        f"length law: {length_failures} failures": length_failures == 0,
    }
    checks.update({f"rejects {k}": v for k, v in rejected.items()})
    record("Property suite", checks)


def test_monte_carlo_sanity():
    start = time.perf_counter()
    checks = {}
    for n in (2, 5, 10):
        s = pair_frequency_monte_carlo(TritDistribution.uniform(), n, 100_000, seed=2026)
        exact, _ = exact_pair_moments(TritDistribution.uniform(), n)
        z = abs(s.mean_pairs - exact) / s.stderr
        checks[f"n={n}: mean {s.mean_pairs:.5f} vs exact {exact:.5f} ({z:.2f} SE)"] = z < 3
    elapsed = time.perf_counter() - start
    checks[f"runtime {elapsed:.2f}s < 10s"] = elapsed < 10
    record("Monte Carlo sanity", checks)
