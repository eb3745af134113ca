"""Rebuild the search-derived catalog assets and the checksum file.

Run from the repository root:  python scripts/regenerate_search_assets.py
Assets are append-only: an existing file is left alone unless --force.
"""

import argparse
import hashlib
import json
from pathlib import Path

from pcsds.formats import format_sequence_file
from pcsds.sds import enumerate_parameter_sets, sds_to_pcs
from pcsds.search import SearchConfig, stochastic_sds

ASSETS = Path(__file__).resolve().parents[1] / "src" / "pcsds" / "catalog" / "assets"

SEARCHED = {
    # name: (p, N, config)
    "pcs6-n6": (6, 6, SearchConfig(mode="stochastic", seed=0, max_evaluations=1_000_000)),
}


def search_witness(p, N, cfg):
    for ps in enumerate_parameter_sets(p, N):
        out = stochastic_sds(ps, cfg)
        if out.found:
            return ps, out.witnesses[0]
    raise SystemExit(f"no witness for PCS_{p}^{N} within budget")


def write_checksums():
    lines = []
    for path in sorted(ASSETS.rglob("*")):
        if path.is_file() and path.name != "CHECKSUMS":
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
            lines.append(f"{digest}  {path.relative_to(ASSETS).as_posix()}")
    (ASSETS / "CHECKSUMS").write_text("\n".join(lines) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--force", action="store_true")
    args = ap.parse_args()
    for name, (p, N, cfg) in SEARCHED.items():
        path = ASSETS / "seq" / f"{name}.seq"
        if path.exists() and not args.force:
            continue
        ps, fam = search_witness(p, N, cfg)
        comments = [
            f"# search: stochastic_sds {ps}",
            f"# config: {json.dumps(cfg.to_dict(), sort_keys=True)}",
            "# sets: " + json.dumps(fam.as_lists()),
        ]
        path.write_text(format_sequence_file(sds_to_pcs(fam), role="pcs", comments=comments))
        print("wrote", path)
    write_checksums()


if __name__ == "__main__":
    main()
