"""Text and structured (JSON) encodings for sequences, families and SDS.

Sequence family files are lines over {'+', '-'}.  Leading '#' lines are
comments; a comment of the form ``# role: <kind> [m=<m> n=<n>]`` declares
what the file holds (pcs, acs, golay, base).  Without one the file is a
plain PCS family.

SDS files in text form::

    # free comment
    name: p3-n36
    source: listing of (36;15,15,15;18)
    N=36 lambda=18
    0 1 2 3 4 6 7 11 13 15 18 21 23 27 29
    ...

one subset per line, ``-`` for the empty subset.  The structured form is a
JSON object with the same field names: N, lambda, sets, name, source.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .sds import ResidueSubset, SdsFamily
from .seqcore import BinarySequence, SequenceFamily

ROLES = ("pcs", "acs", "golay", "base")
_HEADER = re.compile(r"^N\s*=\s*(-?\d+)\s+lambda\s*=\s*(-?\d+)$")
_ROLE = re.compile(r"^#\s*role\s*:\s*(\S+)(.*)$")


@dataclass
class SequenceFile:
    role: str
    sequences: list[BinarySequence]
    split: tuple[int, int] | None = None
    comments: tuple[str, ...] = ()

    def family(self) -> SequenceFamily:
        if self.role == "base":
            raise ParseError("base-sequence quads have unequal lengths; use construct.BaseSequenceQuad")
        return SequenceFamily(tuple(self.sequences))


# sequences ---------------------------------------------------------------------

def parse_sequence_file(text: str) -> SequenceFile:
    role = None
    split = None
    comments = []
    seqs: list[BinarySequence] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if seqs:
                raise ParseError(f"line {lineno}: comment after sequence data")
            m = _ROLE.match(line)
            if m:
                if role is not None:
                    raise ParseError(f"line {lineno}: role declared twice")
                role = m.group(1).lower()
                if role not in ROLES:
                    raise ParseError(f"line {lineno}: unknown role {role!r}")
                kv = dict(re.findall(r"(\w+)\s*=\s*(\d+)", m.group(2)))
                if role == "base":
                    if set(kv) != {"m", "n"}:
                        raise ParseError(f"line {lineno}: base role needs m=<int> n=<int>")
                    split = (int(kv["m"]), int(kv["n"]))
            else:
                comments.append(line)
            continue
        try:
            seqs.append(BinarySequence.from_string(line))
        except (ParseError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not seqs:
        raise ParseError("no sequences found")
    role = role or "pcs"
    if role == "base":
        m, n = split
        if [len(s) for s in seqs] != [m, m, n, n]:
            raise ParseError(
                f"base quad must have lengths {m},{m},{n},{n}; got {[len(s) for s in seqs]}"
            )
    else:
        if len({len(s) for s in seqs}) != 1:
            raise ParseError("family members differ in length")
        if role == "golay" and len(seqs) != 2:
            raise ParseError("a golay file holds exactly two sequences")
    return SequenceFile(role, seqs, split, tuple(comments))


def format_sequence_file(seqs, role: str | None = None, split=None, comments=()) -> str:
    lines = list(comments)
    if role is not None:
        head = f"# role: {role}"
        if split is not None:
            head += f" m={split[0]} n={split[1]}"
        lines.insert(0, head)
    lines.extend(str(s) for s in seqs)
    return "\n".join(lines) + "\n"


# SDS ---------------------------------------------------------------------------

def _sds_from_fields(n, lam, sets, name=None, source=None) -> SdsFamily:
    if not isinstance(n, int) or n < 1:
        raise ParseError(f"N must be a positive integer, got {n!r}")
    if not isinstance(lam, int) or lam < 0:
        raise ParseError(f"lambda must be a non-negative integer, got {lam!r}")
    if not sets:
        raise ParseError("an SDS needs at least one subset")
    subsets = []
    for i, s in enumerate(sets, 1):
        if any(not isinstance(x, int) for x in s):
            raise ParseError(f"subset {i}: non-integer element")
        if len(set(s)) != len(s):
            raise ParseError(f"subset {i}: duplicated element")
        bad = [x for x in s if not 0 <= x < n]
        if bad:
            raise ParseError(f"subset {i}: elements {bad} out of range 0..{n - 1}")
        subsets.append(ResidueSubset(n, tuple(sorted(s))))
    return SdsFamily(n, tuple(subsets), lam, name=name, source=source)


def parse_sds_text(text: str) -> SdsFamily:
    meta: dict[str, str] = {}
    header = None
    sets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            m = _HEADER.match(line)
            if m:
                header = (int(m.group(1)), int(m.group(2)))
                continue
            key, sep, value = line.partition(":")
            if sep and key.strip() in ("name", "source"):
                meta[key.strip()] = value.strip()
                continue
            raise ParseError(f"line {lineno}: expected 'N=<n> lambda=<l>' header, got {line!r}")
        if line == "-":
            sets.append([])
            continue
        try:
            sets.append([int(tok) for tok in line.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"line {lineno}: bad subset line {line!r}") from None
    if header is None:
        raise ParseError("missing 'N=<n> lambda=<l>' header")
    return _sds_from_fields(header[0], header[1], sets, **meta)


def format_sds_text(f: SdsFamily) -> str:
    lines = []
    if f.name:
        lines.append(f"name: {f.name}")
    if f.source:
        lines.append(f"source: {f.source}")
    lines.append(f"N={f.modulus} lambda={f.lam}")
    for s in f.subsets:
        lines.append(" ".join(map(str, s.elements)) if s.k else "-")
    return "\n".join(lines) + "\n"


def sds_to_dict(f: SdsFamily) -> dict:
    d = {"N": f.modulus, "lambda": f.lam, "sets": f.as_lists()}
    if f.name:
        d["name"] = f.name
    if f.source:
        d["source"] = f.source
    return d


def sds_from_dict(d: dict) -> SdsFamily:
    unknown = set(d) - {"N", "lambda", "sets", "name", "source"}
    if unknown:
        raise ParseError(f"unknown SDS fields {sorted(unknown)}")
    try:
        return _sds_from_fields(d["N"], d["lambda"], d["sets"], d.get("name"), d.get("source"))
    except KeyError as exc:
        raise ParseError(f"missing SDS field {exc}") from None


def parse_sds_json(text: str) -> SdsFamily:
    try:
        return sds_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from None


def format_sds_json(f: SdsFamily) -> str:
    return json.dumps(sds_to_dict(f), sort_keys=True) + "\n"


# auto-detection ----------------------------------------------------------------

def detect_kind(text: str) -> str:
    """'sds' or 'sequences'; raises ParseError when the header is ambiguous."""
    body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not body:
        raise ParseError("empty file")
    if body[0].startswith("{"):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from None
        if isinstance(d, dict) and "sets" in d and "sequences" not in d:
            return "sds"
        raise ParseError("structured file is not an SDS record")
    has_header = any(_HEADER.match(ln) for ln in body)
    looks_seq = all(set(ln) <= {"+", "-"} for ln in body)
    if has_header and not looks_seq:
        return "sds"
    if looks_seq and not has_header:
        return "sequences"
    raise ParseError("cannot tell whether file holds sequences or an SDS")


def load_sds(path: str | Path) -> SdsFamily:
    text = Path(path).read_text()
    if detect_kind(text) != "sds":
        raise ParseError(f"{path}: not an SDS file")
    return parse_sds_json(text) if text.lstrip().startswith("{") else parse_sds_text(text)


def load_sequences(path: str | Path) -> SequenceFile:
    text = Path(path).read_text()
    if detect_kind(text) != "sequences":
        raise ParseError(f"{path}: not a sequence file")
    return parse_sequence_file(text)
