import math

import numpy as np
import pytest

from helix11 import codes, dna, pipeline, sigma


def test_code_rate_formula():
    assert pipeline.code_rate(10, False, 36) == pytest.approx(
        10 * math.log(11, 4) / 36)
    assert pipeline.code_rate(10, True, 36) == pytest.approx(
        (10 * math.log(11, 4) + 0.5) / 36)


def test_build_family1_k2():
    book = pipeline.build(pipeline.CodebookSpec("family1:k=2", apply_f=True))
    assert book.dna_length == 12
    assert book.size_exponent == 2
    assert book.sequences.shape == (121, 12)
    assert book.rate == pytest.approx(0.288286, abs=5e-6)
    seqs = set(book.iter_seqs())
    assert len(seqs) == 121  # phi injective, flips preserve distinctness here


def test_build_hamming_r2_not_enumerable():
    book = pipeline.build(pipeline.CodebookSpec("hamming:r=2", apply_f=True))
    assert book.sequences is None
    assert book.dna_length == 36
    assert book.rate == pytest.approx(0.480477, abs=5e-6)


def test_build_augmented_doubles_and_keeps_distance():
    plain = pipeline.build(pipeline.CodebookSpec("family1:k=2"))
    aug = pipeline.build(
        pipeline.CodebookSpec("family1:k=2", augment_complement=True))
    assert aug.sequences.shape[0] == 2 * plain.sequences.shape[0]
    pipeline.certify_distances(plain, ("dna_hamming",))
    pipeline.certify_distances(aug, ("dna_hamming",))
    assert aug.distances["dna_hamming"].lower == \
        plain.distances["dna_hamming"].lower == 3


def test_certify_distances_enumerable():
    book = pipeline.build(pipeline.CodebookSpec("family1:k=2", apply_f=True))
    pipeline.certify_distances(
        book, ("induced", "dna_hamming", "reverse", "reverse_complement"))
    assert book.distances["induced"].lower == 3
    assert book.distances["reverse_complement"].lower >= 4
    # flip map can push a pair below the pre-flip distance
    assert book.distances["dna_hamming"].kind == "exact"


def test_certify_distances_bounded_for_large_book():
    book = pipeline.build(pipeline.CodebookSpec("hamming:r=2", apply_f=True))
    pipeline.certify_distances(book, ("induced", "dna_hamming_after_f"))
    assert book.distances["induced"].lower == 3
    cert = book.distances["dna_hamming_after_f"]
    assert cert.kind == "bounded"
    assert (cert.lower, cert.upper) == pipeline.flip_distance_interval(12, 3)


def test_flip_distance_interval():
    assert pipeline.flip_distance_interval(4, 3) == (3, 6)


def test_verify_constraints_post_flip_passes():
    book = pipeline.build(pipeline.CodebookSpec("family1:k=2", apply_f=True))
    rep = pipeline.verify_constraints(book)
    assert rep["mode"] == "exhaustive"
    assert rep["runs"]["status"] == "pass"
    assert rep["stems"]["status"] == "pass"
    assert book.errata == []


def test_verify_constraints_pre_flip_run_failure():
    book = pipeline.build(pipeline.CodebookSpec("family1:k=2"))
    rep = pipeline.verify_constraints(book)
    # the all-zeros codeword maps to C^12
    assert rep["runs"]["status"] == "fail"
    assert rep["runs"]["worst_value"] == 12
    assert rep["runs"]["witness"] == "C" * 12
    assert rep["energy"]["status"] == "pass"
    assert rep["energy"]["worst_value"] >= -4 * 4
    assert any(e["claim"] == "runs" for e in book.errata)


def test_verify_constraints_sampled_mode():
    spec = pipeline.CodebookSpec("hamming:r=2", apply_f=True,
                                 sample_budget=200, seed=42)
    book = pipeline.build(spec)
    rep = pipeline.verify_constraints(book)
    assert rep["mode"] == "sampled"
    assert rep["sample_count"] == 200
    assert rep["runs"]["worst_value"] <= 4


def test_rate_table_computed_rows():
    rows = {r["name"]: r for r in pipeline.rate_table()}
    assert rows["f(phi(H2)) over Z11"]["rate"] == pytest.approx(0.48047,
                                                                abs=5e-5)
    assert rows["f(phi(H5)) over Z11"]["rate"] == pytest.approx(0.57639,
                                                                abs=5e-5)
    assert rows["f(phi(C2)) over Z11"]["provenance"] == "computed"
    externals = [r for r in rows.values() if r["provenance"] == "external"]
    assert len(externals) == 11


def test_rate_table_asymptotic_factor():
    rows = {r["name"]: r for r in pipeline.rate_table()}
    factor = rows["asymptotic factor log4(11)/3"]["rate"]
    assert factor == pytest.approx(math.log(11, 4) / 3)
    # non-augmented DNA rate / Z11 symbol rate equals the factor
    book = pipeline.build(pipeline.CodebookSpec("family1:k=2", apply_f=True))
    z11_rate = book.code.k / book.code.n
    assert book.rate / z11_rate == pytest.approx(factor, abs=1e-6)


def test_report_dict_roundtrips_to_json():
    import json

    book = pipeline.build(pipeline.CodebookSpec("family1:k=2", apply_f=True))
    pipeline.certify_distances(book, ("induced",))
    pipeline.verify_constraints(book)
    from helix11.cli import _clean

    payload = json.dumps(_clean(book.to_dict()))
    assert "induced" in payload
