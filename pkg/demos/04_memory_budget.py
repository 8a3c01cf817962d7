"""Squeeze the candidate store until it spills to disk; the result does not change."""
import logging
import sys
import tempfile

from simtruss import FlagParams, decompose, gen_flag_complex

logging.basicConfig(level=logging.INFO, format="  %(message)s", stream=sys.stdout)

K = gen_flag_complex(FlagParams(n=40, p=0.3, max_size=4, seed=7))
print("unlimited budget:")
ref = decompose(K).to_tsv()

with tempfile.TemporaryDirectory() as work:
    print("budget of 64 records, 7 chunks:")
    small = decompose(K, budget=64, chunks=7, workdir=work).to_tsv()

print("identical output:", small == ref)
