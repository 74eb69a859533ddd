#!/usr/bin/env python3
"""Brute-force cylinder multiplicities against the divisor closed form, as JSON."""

import argparse
import json

from grushin import cylinder


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lmax", type=int, default=400)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    rows = [
        {"lambda": int(c.lam), "bruteforce": c.bruteforce, "divisor_formula": c.divisor_formula, "agree": c.agree}
        for c in cylinder.multiplicity_comparison(range(4, args.lmax + 1, 4))
    ]
    bad = [r for r in rows if not r["agree"]]
    doc = {
        "checked": len(rows),
        "disagreements": bad,
        "all_disagreements_have_even_quarter": all((r["lambda"] // 4) % 2 == 0 for r in bad),
        "odd_quarter_all_agree": all(r["agree"] for r in rows if (r["lambda"] // 4) % 2 == 1),
    }
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    main()
