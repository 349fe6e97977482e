import pytest

from helix11 import fasta


def test_roundtrip(tmp_path):
    records = [
        fasta.FastaRecord(fasta.codebook_header(0, "0000", True), "C" * 70),
        fasta.FastaRecord(fasta.codebook_header(1, "159X", False), "ACCTCA"),
    ]
    path = tmp_path / "book.fasta"
    fasta.write_fasta(str(path), records)
    parsed = fasta.read_fasta(str(path))
    assert parsed == records


def test_header_format():
    assert fasta.codebook_header(3, "41X0", True) == "cw_3 z11=41X0 f=applied"
    assert fasta.codebook_header(0, "00", False) == "cw_0 z11=00"


def test_wrap_at_60():
    rec = fasta.FastaRecord("cw_0 z11=0", "A" * 125)
    text = fasta.format_records([rec])
    lines = text.splitlines()
    assert lines[0] == ">cw_0 z11=0"
    assert [len(l) for l in lines[1:]] == [60, 60, 5]


def test_lowercase_normalized():
    recs = fasta.parse_fasta(">r1\nacgT\n")
    assert recs[0].seq == "ACGT"


def test_parse_error_reports_line_number():
    with pytest.raises(fasta.FastaParseError) as exc:
        fasta.parse_fasta(">r1\nACGT\nACGU\n")
    assert exc.value.line_number == 3


def test_data_before_header_rejected():
    with pytest.raises(fasta.FastaParseError):
        fasta.parse_fasta("ACGT\n")


def test_empty_record_rejected():
    with pytest.raises(fasta.FastaParseError):
        fasta.parse_fasta(">r1\n>r2\nAC\n")


def test_write_is_atomic_no_temp_left(tmp_path):
    path = tmp_path / "x.fasta"
    fasta.write_fasta(str(path), [fasta.FastaRecord("h", "ACGT")])
    leftovers = [p for p in tmp_path.iterdir() if p.suffix == ".tmp"]
    assert leftovers == []
    assert path.exists()
