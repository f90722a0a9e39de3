"""Regenerate the substitution fixtures shipped in src/sqfree/fixtures/.

Each fixture lists the image words explicitly, together with the generator words
they were built from and the expected matrix and frequencies.
"""

import json
from pathlib import Path

from sqfree.morphism import FIXTURE_DIR, SubstitutionTriple, build_sigma_triple

M29 = ("abcbacabacbcabacabcbacbcabcba", "abcbacabacbcacbacabcacbcabcba")
M30 = ("abcbacabacbabcabacabcacbcabcba", "abcbacabacbcabcbacabcacbcabcba")
M33 = ("abcacbacabcbabcabacbcabcbacbcacba", "abcacbcabacabcacbabcbacabacbcacba")
M35 = ("abcacbacabacbcabacabcacbcabacbcacba", "abcacbcabacbabcbacabcbabcabacbcacba",
       "abcacbacabacbcabacabcbabcabacbcacba")

FIXTURE_SPECS = [
    # name, generators (a, b, c) or explicit images, expected matrix, expected frequencies
    ("morphism_m12", None,
     {"a": ["cacbcabacbab"], "b": ["cabacbcacbab"], "c": ["cbacbcabcbab"]},
     [[4, 4, 3], [4, 4, 5], [4, 4, 4]], ["11/36", "13/36", "1/3"]),
    ("pair_m18", ("abcacbacabacbcacba",) * 3, None,
     [[7, 6, 5], [5, 7, 6], [6, 5, 7]], ["1/3", "1/3", "1/3"]),
    ("pair_m29", (M29[0], M29[0], M29[1]), None,
     [[10, 9, 9], [10, 10, 10], [9, 10, 10]], ["9/28", "10/29", "271/812"]),
    ("pair_m30_alpha1", (M30[0], M30[1], M30[0]), None,
     [[11, 10, 10], [10, 10, 9], [9, 10, 11]], ["10/29", "271/841", "280/841"]),
    ("pair_m30_alpha2", (M30[0], M30[1], M30[1]), None,
     [[11, 10, 10], [10, 10, 10], [9, 10, 10]], ["10/29", "1/3", "28/87"]),
    ("pair_m33_alpha1", (M33[0], M33[1], M33[0]), None,
     [[11, 11, 11], [11, 12, 11], [11, 10, 11]], ["1/3", "11/32", "31/96"]),
    ("pair_m33_alpha2", (M33[0], M33[1], M33[1]), None,
     [[11, 11, 10], [11, 12, 11], [11, 10, 12]], ["331/1024", "11/32", "341/1024"]),
    ("pair_m35", M35, None,
     [[13, 11, 11], [10, 12, 11], [12, 12, 13]], ["1/3", "16/51", "6/17"]),
]


def main(out_dir: Path = FIXTURE_DIR):
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, gens, images, matrix, freqs in FIXTURE_SPECS:
        if gens is not None:
            triple = build_sigma_triple(*gens, name=name)
        else:
            triple = SubstitutionTriple(images["a"], images["b"], images["c"], name=name)
        data = triple.to_json()
        if gens is not None:
            data["generators"] = {"a": gens[0], "b": gens[1], "c": gens[2],
                                  "rule": "a: {g, rev g}; b: sigma{g, rev g}; c: sigma^2{g, rev g}"}
        data["expected"] = {"matrix": matrix, "frequencies": freqs}
        (out_dir / f"{name}.json").write_text(json.dumps(data, indent=2) + "\n")
        print(f"wrote {name}.json (m={triple.m}, k={triple.k})")


if __name__ == "__main__":
    main()
