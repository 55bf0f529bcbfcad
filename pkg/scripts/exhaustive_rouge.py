"""Check rouge_n and rouge_su against brute-force counting on every pair of
token sequences up to a given length over a small alphabet.

With the defaults (length 8, three symbols) this is 9841**2 pairs and takes a
couple of hours on one core.
"""
import argparse
import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import brute_ngrams, brute_overlap, brute_su_units  # noqa: E402
from swsumm.rouge import rouge_n, rouge_su  # noqa: E402


def sequences(max_len, alphabet):
    for n in range(max_len + 1):
        for s in itertools.product(alphabet, repeat=n):
            yield list(s)


def counts(score):
    return score.match_count, score.candidate_count, score.reference_count


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--alphabet", default="abc")
    ap.add_argument("--progress", type=int, default=500, help="report every N candidates")
    args = ap.parse_args(argv)

    seqs = list(sequences(args.max_len, args.alphabet))
    bigrams = [brute_ngrams(s, 2) for s in seqs]
    su = [brute_su_units(s, 4) for s in seqs]
    start = time.time()
    checked = 0
    for i, cand in enumerate(seqs):
        for j, ref in enumerate(seqs):
            if counts(rouge_n(cand, ref, 2)) != brute_overlap(bigrams[i], bigrams[j]):
                print(f"MISMATCH rouge_n {cand} {ref}")
                return 1
            if counts(rouge_su(cand, ref, 4)) != brute_overlap(su[i], su[j]):
                print(f"MISMATCH rouge_su {cand} {ref}")
                return 1
            checked += 1
        if (i + 1) % args.progress == 0:
            print(f"{i + 1}/{len(seqs)} candidates, {time.time() - start:.0f}s", flush=True)
    print(f"OK {checked} pairs ({len(seqs)} sequences) in {time.time() - start:.0f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
