"""FASTA reading and writing for codebook files.

Headers follow "cw_<index> z11=<digits with X for ten> [f=applied]".
Sequence lines wrap at 60 columns; writes are atomic (temp + rename).
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass

from . import dna

WRAP = 60


@dataclass
class FastaRecord:
    header: str
    seq: str


def codebook_header(index: int, z11_digits: str, f_applied: bool) -> str:
    tail = " f=applied" if f_applied else ""
    return f"cw_{index} z11={z11_digits}{tail}"


def format_records(records) -> str:
    lines = []
    for rec in records:
        lines.append(f">{rec.header}")
        for i in range(0, len(rec.seq), WRAP):
            lines.append(rec.seq[i:i + WRAP])
    return "\n".join(lines) + "\n"


def write_fasta(path: str, records):
    text = format_records(records)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class FastaParseError(ValueError):
    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def parse_fasta(text: str):
    records = []
    header = None
    chunks = []
    start_line = 0
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            if header is not None:
                records.append(_finish(header, chunks, start_line))
            header = line[1:].strip()
            chunks = []
            start_line = ln
        else:
            if header is None:
                raise FastaParseError("sequence data before any header", ln)
            try:
                chunks.append(dna.normalize(line))
            except ValueError as e:
                raise FastaParseError(str(e), ln) from e
    if header is not None:
        records.append(_finish(header, chunks, start_line))
    return records


def _finish(header, chunks, line_number):
    seq = "".join(chunks)
    if not seq:
        raise FastaParseError(f"record {header!r} has no sequence", line_number)
    return FastaRecord(header, seq)


def read_fasta(path: str):
    with open(path) as fh:
        return parse_fasta(fh.read())
