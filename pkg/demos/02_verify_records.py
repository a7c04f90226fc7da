"""
Certifying the built-in polynomial records
==========================================

Each record carries a degree-(ell+1) polynomial whose splitting field
realizes the projective mod-ell representation of a level-one cusp
form.  The verifier stacks independent checks: Frobenius charpol
consistency at many primes, irreducibility, PGL_2 cycle-type census,
oddness (signature), the ramification profile of the field
discriminant, and the Serre-weight constraint at ell.

Run with --pmax to push the charpol check to larger primes
(the shipped default keeps the demo under a minute).
"""

import argparse
import time

from galrep.records import builtin_records
from galrep.verify import VerifyOptions, verify_record

parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[1])
parser.add_argument("--pmax", type=int, default=60,
                    help="charpol consistency checked for primes < pmax")
parser.add_argument("--pattern-pmax", type=int, default=500,
                    help="PGL2 cycle-type census samples primes < pattern-pmax")
args = parser.parse_args()

opts = VerifyOptions(charpol_pmax=args.pmax, pattern_pmax=args.pattern_pmax)
for record in builtin_records().values():
    t0 = time.time()
    report = verify_record(record, opts)
    print(report.text())
    print(f"  ({time.time() - t0:.1f}s)")
    print()
