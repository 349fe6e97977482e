"""Codebook orchestration: code -> trinucleotide map -> flip map,
constraint verification, rates, and the comparison table."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import codes, dna, folding, sigma, zmod11
from .errors import BudgetExceeded, GuardViolated

LOG4_11 = math.log(11, 4)
ASYMPTOTIC_FACTOR = LOG4_11 / 3


@dataclass
class CodebookSpec:
    family: str
    apply_f: bool = False
    augment_complement: bool = False
    cap: int = codes.DEFAULT_CAP
    max_run: int = 4
    max_stem: int = 2
    flip_threshold: int = 4
    sample_budget: int = 10_000
    seed: int = 0

    def to_dict(self):
        return dict(self.__dict__)


@dataclass
class DnaCodebook:
    spec: CodebookSpec
    code: codes.LinearCode
    dna_length: int
    size_exponent: int
    augmented: bool
    rate: float
    sequences: np.ndarray | None = None  # (M, L) base codes, or None
    codewords: np.ndarray | None = None
    distances: dict = field(default_factory=dict)
    constraints: dict = field(default_factory=dict)
    errata: list = field(default_factory=list)

    @property
    def enumerable(self):
        return self.sequences is not None

    def iter_seqs(self):
        for row in self.sequences:
            yield dna.codes_to_seq(row)

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "family": self.code.spec_string(),
            "dna_length": self.dna_length,
            "size_exponent": self.size_exponent,
            "augmented": self.augmented,
            "rate": self.rate,
            "enumerable": self.enumerable,
            "distances": {m: c.to_dict() for m, c in self.distances.items()},
            "constraints": self.constraints,
            "errata": self.errata,
        }


def code_rate(k_exponent: int, augmented: bool, dna_length: int) -> float:
    """log4(M) / n for M = 11^k (doubled when augmented)."""
    bits4 = k_exponent * LOG4_11 + (math.log(2, 4) if augmented else 0.0)
    return bits4 / dna_length


def build(spec: CodebookSpec) -> DnaCodebook:
    """Construct the code, map it through the block alphabet, and
    optionally apply the flip map and the complement augmentation."""
    code = codes.parse_family_spec(spec.family)
    dna_length = 3 * code.n
    if spec.augment_complement:
        d = codes.design_distance(code)
        if d is not None and d > code.n:
            raise GuardViolated(
                f"augmentation needs min distance <= {code.n}, design d = {d}")
    seqs = cws = None
    if codes.is_enumerable(code, spec.cap):
        cws = codes.enumerate_codewords(code, spec.cap)
        seqs = sigma.phi_batch(cws)
        if spec.apply_f:
            seqs = np.stack([sigma.f_flip_codes(r, spec.flip_threshold)
                             for r in seqs])
        if spec.augment_complement:
            seqs = np.vstack([seqs, dna.COMPLEMENT_LUT[seqs]])
            cws = np.vstack([cws, cws])
    rate = code_rate(code.k, spec.augment_complement, dna_length)
    return DnaCodebook(spec, code, dna_length, code.k,
                       spec.augment_complement, rate, seqs, cws)


def certify_distances(book: DnaCodebook, metrics=("hamming_z11", "induced")):
    """Fill distance certificates; exact pairwise for enumerable books,
    bound certificates otherwise."""
    for metric in metrics:
        if book.enumerable and metric in ("reverse", "reverse_complement",
                                          "dna_hamming"):
            seqs = book.sequences
            other = seqs
            exclude = "index"
            if metric in ("reverse", "reverse_complement"):
                other = seqs[:, ::-1]
                exclude = "zero"
                if metric == "reverse_complement":
                    other = dna.COMPLEMENT_LUT[other]
            d, wit = codes._min_pairwise(seqs, other, None, exclude)
            pair = None
            if wit is not None and book.codewords is not None:
                i, j = wit
                pair = (tuple(book.codewords[i]), tuple(book.codewords[j]))
            book.distances[metric] = codes.DistanceCert(
                metric, "exact", d if d is not None else 0,
                d if d is not None else 0, pair)
        else:
            book.distances[metric] = codes.min_distance(
                book.code, metric, cap=book.spec.cap,
                apply_f=book.spec.apply_f,
                flip_threshold=book.spec.flip_threshold)
    return book.distances


def flip_distance_interval(n_blocks: int, induced_d: int):
    """Post-flip Hamming distance interval from the certified induced
    distance: ceil(3d/4) <= d_H <= ceil((3n+3d)/4)."""
    return (math.ceil(3 * induced_d / 4),
            math.ceil((3 * n_blocks + 3 * induced_d) / 4))


def _sample_sequences(book: DnaCodebook, rng: np.random.Generator):
    msgs = rng.integers(0, 11, size=(book.spec.sample_budget, book.code.k))
    cws = zmod11.encode_batch(msgs, book.code.G)
    seqs = sigma.phi_batch(cws)
    if book.spec.apply_f:
        seqs = np.stack([sigma.f_flip_codes(r, book.spec.flip_threshold)
                         for r in seqs])
    return seqs


# past this DNA length the O(L^2) folding tables stop being practical
# for sampled verification; the report then stays analytic
SAMPLE_LENGTH_LIMIT = 1200


def verify_constraints(book: DnaCodebook, check_energy: bool | None = None):
    """Per-sequence checks: homopolymer runs, stem lengths, optional
    pre-flip energy floor, and reported (never enforced) GC content.

    Violations of the published run and stem claims are recorded in the book's
    errata list with witnesses; the report marks them as failures.
    """
    rng = np.random.default_rng(book.spec.seed)
    if book.enumerable:
        seqs = book.sequences
        status_kind = "exhaustive"
    elif book.dna_length <= SAMPLE_LENGTH_LIMIT:
        seqs = _sample_sequences(book, rng)
        status_kind = "sampled"
    else:
        report = {
            "mode": "analytic",
            "sample_count": 0,
            "note": ("sequence length %d exceeds the per-sequence "
                     "verification limit %d; constraints not sampled"
                     % (book.dna_length, SAMPLE_LENGTH_LIMIT)),
        }
        book.constraints = report
        return report
    count = seqs.shape[0]
    if check_energy is None:
        check_energy = not book.spec.apply_f and not book.augmented

    worst_run, run_wit = 0, None
    worst_stem, stem_wit = 0, None
    gc_total = 0

    L = seqs.shape[1]
    chunk = max(1, 5_000_000 // (L * L))
    stems = np.concatenate([folding.max_stem_batch(seqs[i:i + chunk])
                            for i in range(0, count, chunk)])
    for i, row in enumerate(seqs):
        s = dna.codes_to_seq(row)
        r = dna.max_homopolymer_run(s)
        if r > worst_run:
            worst_run, run_wit = r, s
        if stems[i] > worst_stem:
            worst_stem, stem_wit = int(stems[i]), s
        gc_total += (row == 1).sum() + (row == 2).sum()

    report = {
        "mode": status_kind,
        "sample_count": int(count),
        "runs": {
            "status": "pass" if worst_run <= book.spec.max_run else "fail",
            "worst_value": int(worst_run),
            "threshold": book.spec.max_run,
            "witness": run_wit if worst_run > book.spec.max_run else None,
        },
        "stems": {
            "status": "pass" if worst_stem <= book.spec.max_stem else "fail",
            "worst_value": int(worst_stem),
            "threshold": book.spec.max_stem,
            "witness": stem_wit if worst_stem > book.spec.max_stem else None,
        },
        "gc_content_mean": float(gc_total) / (count * book.dna_length),
    }

    if check_energy:
        energies = np.concatenate(
            [folding.min_free_energy_batch(seqs[i:i + chunk])
             for i in range(0, count, chunk)])
        bound = -4 * book.code.n
        worst = int(energies.min())
        report["energy"] = {
            "status": "pass" if worst >= bound else "fail",
            "worst_value": worst,
            "bound": bound,
        }

    for name in ("runs", "stems"):
        entry = report[name]
        if entry["status"] == "fail":
            wit = entry["witness"]
            _, pairs = folding.max_stem_length(wit) if name == "stems" else (None, None)
            book.errata.append({
                "severity": "errata",
                "claim": name,
                "worst_value": entry["worst_value"],
                "threshold": entry["threshold"],
                "witness": wit,
                "witness_pairs": pairs,
            })
    book.constraints = report
    return report


# Table-1 style comparison rows.  Literature rows are reference
# constants only; computed rows come from the constructions above.
_EXTERNAL_ROWS = [
    ("Example 9 [a13]", 0.14937, "No", ">4", "No"),
    ("Example 2 [a9]", 0.25850, "Yes", ">4", "No"),
    ("Example 4 [a9]", 0.40105, "Yes", ">4", "No"),
    ("(8,256,4) Table III [a4]", 0.50000, "No", "No", "Yes"),
    ("(8,244,4) Table III [a4]", 0.48796, "No", "No", "Yes"),
    ("f(phi(H7)) [a0]", 0.58027, "Yes", "<4", "Yes"),
    ("C u C^c, C=f(phi(H2)) [a0]", 0.42865, "Yes", "<4", "Yes"),
    ("f(phi(H2)) [a0]", 0.42865, "Yes", "<4", "Yes"),
    ("C u C^c, C=f(phi(C2)) [a0]", 0.35274, "Yes", "<4", "Yes"),
    ("f(phi(C2)) [a0]", 0.29024, "Yes", "<4", "Yes"),
    ("f(phi((10,8,3) RS)) [a0]", 0.145120, "Yes", "<4", "Yes"),
]


def rate_table():
    """Comparison rows: the five codes built here computed from first
    principles, literature rows as external reference constants, plus
    the asymptotic rate factor."""
    rows = []

    def computed(name, n, k, augmented):
        rows.append({
            "name": name,
            "n_dna": 3 * n,
            "size_exponent": k,
            "rate": code_rate(k, augmented, 3 * n),
            "P1_stem": "<=2",
            "P2_run": "<=4",
            "P3_rc": "Yes",
            "provenance": "computed",
        })

    n5 = (11 ** 5 - 1) // 10  # Hamming r=5 parameters, no need to build G
    computed("f(phi(H5)) over Z11", n5, n5 - 5, False)
    computed("C u C^c, C=f(phi(H2)) over Z11", 12, 10, True)
    computed("f(phi(H2)) over Z11", 12, 10, False)
    computed("f(phi(C2)) over Z11", 4, 2, False)
    computed("f(phi((10,8,3) RS)) over Z11", 10, 8, False)

    for name, rate, p1, p2, p3 in _EXTERNAL_ROWS:
        rows.append({
            "name": name, "n_dna": None, "size_exponent": None,
            "rate": rate, "P1_stem": p1, "P2_run": p2, "P3_rc": p3,
            "provenance": "external",
        })
    rows.append({
        "name": "asymptotic factor log4(11)/3",
        "n_dna": None, "size_exponent": None,
        "rate": ASYMPTOTIC_FACTOR,
        "P1_stem": "", "P2_run": "", "P3_rc": "",
        "provenance": "computed",
    })
    return rows
