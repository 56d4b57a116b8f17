#!/usr/bin/env python3
"""Regenerate the shipped theory/model/proof files from the library builders.

Run from the repository root:  python3 tools/gen_data.py
The test suite asserts the checked-in files match this output byte for byte.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from abslog.parser import render_script_items
from abslog.printer import render_model, render_theory
from abslog.semantics import degenerate_model
from abslog.theories import (
    TheoryBundle,
    derived_proofs_E,
    logic_E,
    logic_peano,
    script_items_from_bundle,
    standard_two_element_model,
)

DATA = Path(__file__).resolve().parents[1] / "src" / "abslog" / "data"


def generate() -> dict[str, str]:
    le = logic_E()
    peano = logic_peano()
    bundle = derived_proofs_E()
    imp_refl_only = TheoryBundle(le, (("imp_refl", dict(bundle.proofs)["imp_refl"]),))
    return {
        "le.th": render_theory(le),
        "peano.th": render_theory(peano),
        "bool2.model": render_model(standard_two_element_model()),
        "le_degenerate.model": render_model(degenerate_model(le.signature)),
        "peano_degenerate.model": render_model(degenerate_model(peano.signature)),
        "derived_e.proof": render_script_items(script_items_from_bundle(bundle)),
        "imp_refl.proof": render_script_items(script_items_from_bundle(imp_refl_only)),
    }


def main() -> None:
    DATA.mkdir(exist_ok=True)
    for name, text in generate().items():
        path = DATA / name
        path.write_text(text)
        print(f"wrote {path} ({len(text.splitlines())} lines)")


if __name__ == "__main__":
    main()
