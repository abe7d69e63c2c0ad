"""Sequence experiments and sup-norm certificates.

A sequence of divisors with decaying diagonal ratio and bounded heights
should equidistribute; the experiment runner tracks the witnesses row by
row and flags sequences whose diagonal mass refuses to decay.  The
certifier turns a finite table of pairing rows plus tail bounds into an
accept/refuse verdict with the violated hypothesis named.

Run with  python3 demos/05_sequences_and_certificates.py
"""

import json

from adelic import (
    SequenceSpec,
    experiment_run,
    generate,
    lemma43_certify,
    std_weight,
    trivial_weight,
)


def main():
    print("== unit roots: the model sequence ==")
    spec = SequenceSpec("unit_roots", n_max=6, n_min=2)
    res = experiment_run(spec, std_weight())
    print("  n  degree  diag_ratio  uniform_sup")
    for row in res.rows:
        rec = row.csv_record()
        print("  %-2s %-7s %-11.4f %.6f"
              % (rec["n"], rec["degree"], rec["diag_ratio"], rec["uniform_sup"]))
    print("  flagged as failing the small-diagonal hypothesis: %s"
          % res.small_diagonal_suspect)

    print()
    print("== iterated quadratic preimages of 0: the control ==")
    print("   z -> z^2 keeps all mass on the single point 0, so the")
    print("   diagonal ratio never decays; the runner reports this")
    print("   instead of silently dropping the sequence.")
    spec = SequenceSpec("preimages", n_max=5, param=0)
    res = experiment_run(spec, trivial_weight())
    for row in res.rows:
        rec = row.csv_record()
        print("  depth %-2s degree %-4s diag_ratio %.1f"
              % (rec["n"], rec["degree"], rec["diag_ratio"]))
    print("  flagged as failing the small-diagonal hypothesis: %s"
          % res.small_diagonal_suspect)

    print()
    print("== a genuinely contracting preimage sequence ==")
    spec = SequenceSpec("preimages", n_max=5, param=1)
    *_, Z = generate(spec)
    print("  depth 5 of z^2 + 1: degree %d, diagonal ratio %s"
          % (Z.degree, Z.small_diagonal_ratio))

    print()
    print("== certificates ==")
    rows = [[0.002, -0.001], [0.000, 0.003]]
    tails = [0.25, 0.0625]
    out = lemma43_certify(rows, tails, tail_bound=1.0 / 48, eps=0.1)
    print("  accepted table: %s" % json.dumps(out.to_json()))
    bad = lemma43_certify([[0.9, 0.9]], [1.0, 1.0], tail_bound=1.0 / 48, eps=0.1)
    print("  refused table:  %s" % json.dumps(bad.to_json()))


if __name__ == "__main__":
    main()
