#!/usr/bin/env python3
"""Extract the universal polar reliability sequence from a source file.

Scans C/C++/Python/MATLAB source (local path or URL) for an initializer
list holding a permutation of 0..1023, indices in increasing reliability,
and writes it one index per line — the format `ppo construct --method
file:PATH` consumes.
"""

import argparse
import re
import sys
import urllib.request

SEQ_LEN = 1024


def candidate_blocks(text: str):
    """Yield every balanced {...} / [...] block at any nesting depth."""
    for opener, closer in (("{", "}"), ("[", "]")):
        stack = []
        for i, ch in enumerate(text):
            if ch == opener:
                stack.append(i)
            elif ch == closer and stack:
                yield text[stack.pop() + 1 : i]


def parse_sequence(block: str):
    body = re.sub(r"//[^\n]*|#[^\n]*|/\*.*?\*/", " ", block, flags=re.S)
    if re.search(r"[^\s\d,+\-]", body):
        return None
    values = [int(tok) for tok in re.findall(r"[+-]?\d+", body)]
    if len(values) != SEQ_LEN or sorted(values) != list(range(SEQ_LEN)):
        return None
    return values


def load(source: str) -> str:
    if re.match(r"https?://", source):
        with urllib.request.urlopen(source) as resp:
            return resp.read().decode("utf-8", errors="replace")
    with open(source, encoding="utf-8", errors="replace") as f:
        return f.read()


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("source", help="file path or URL containing the sequence table")
    ap.add_argument("-o", "--out", default="nr_sequence.txt", help="output file")
    args = ap.parse_args()

    text = load(args.source)
    found = None
    for block in candidate_blocks(text):
        seq = parse_sequence(block)
        if seq is not None:
            if found is not None and seq != found:
                print("error: source holds two different candidate sequences", file=sys.stderr)
                return 1
            found = seq
    if found is None:
        print(f"error: no permutation of 0..{SEQ_LEN - 1} found in {args.source}", file=sys.stderr)
        return 1

    with open(args.out, "w") as f:
        f.write("\n".join(str(v) for v in found) + "\n")
    print(f"wrote {len(found)} indices to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
