"""Command line front end.

Subcommands: dstar, height, fekete, equidist, verify.  All computation
happens first; printing and file output are single-threaded at the end.
Exit status 0 on success, 1 on a failed verify suite, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .berkovich import BerkPoint
from .certify import lemma43_certify
from .divisors import d_star, divisor_from_poly
from .exact import DomainError, val_p
from .heights import global_fekete, height
from .local import fekete_sum
from .places import ARCH, Place, log_abs, product_formula_check
from .sequences import SequenceSpec, experiment_run
from .weights import (
    Weight,
    ex5_weight,
    potential_kernel,
    radii,
    std_weight,
    trivial_weight,
)

__all__ = ["main"]

_WEIGHTS = {"trivial": trivial_weight, "std": std_weight, "ex5": ex5_weight}


def _parse_poly(text: str) -> list[int]:
    try:
        coeffs = [int(tok.strip()) for tok in text.split(",")]
    except ValueError:
        raise DomainError("--poly wants comma separated integers, got %r" % text)
    if not coeffs:
        raise DomainError("--poly is empty")
    return coeffs


def _weight(name: str) -> Weight:
    if name not in _WEIGHTS:
        raise DomainError("unknown weight %r (choose trivial, std, ex5)" % name)
    return _WEIGHTS[name]()


def _parse_place(text: str) -> Place:
    if text == "inf":
        return ARCH
    try:
        p = int(text)
    except ValueError:
        raise DomainError("--place wants 'inf', a prime, or 'all', got %r" % text)
    return Place(p)


def _parse_family(text: str) -> tuple[str, int | None]:
    if text == "unit_roots":
        return "unit_roots", None
    for tag, family in (("pow:", "pow_minus"), ("preimages:", "preimages")):
        if text.startswith(tag):
            try:
                return family, int(text[len(tag):])
            except ValueError:
                raise DomainError("family parameter must be an integer: %r" % text)
    raise DomainError(
        "unknown family %r (choose unit_roots, pow:<a>, preimages:<c>)" % text
    )


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, indent=1)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_dstar(args) -> int:
    import sympy

    Z = divisor_from_poly(_parse_poly(args.poly), args.inf_mult)
    ds = d_star(Z)
    primes = set(sympy.factorint(ds.numerator)) | set(sympy.factorint(ds.denominator))
    places = [ARCH] + [Place(p) for p in sorted(p for p in primes if p > 1)]
    table = [{"place": str(v), "log_abs": log_abs(ds, v).to_json()} for v in places]
    _emit({
        "degree": Z.degree,
        "dstar": str(ds),
        "log_table": table,
        "product_formula_ok": product_formula_check(ds),
    })
    return 0


def _cmd_height(args) -> int:
    Z = divisor_from_poly(_parse_poly(args.poly), args.inf_mult)
    g = _weight(args.weight)
    h = height(Z, g, tail_eps=args.tail_eps)
    out = {"degree": Z.degree, "weight": g.name}
    out.update(h.to_json())
    _emit(out)
    return 0


def _cmd_fekete(args) -> int:
    Z = divisor_from_poly(_parse_poly(args.poly), args.inf_mult)
    g = _weight(args.weight)
    if args.place == "all":
        report = global_fekete(Z, g, tail_eps=args.tail_eps)
        _emit(report.to_json())
        return 0
    v = _parse_place(args.place)
    value = fekete_sum(Z, g, v)
    _emit({
        "degree": Z.degree,
        "weight": g.name,
        "place": str(v),
        "fekete": value.to_json(),
        "exact": value.is_exact,
    })
    return 0


def _cmd_equidist(args) -> int:
    family, param = _parse_family(args.family)
    spec = SequenceSpec(family, n_max=args.n_max, n_min=args.n_min, param=param)
    g = _weight(args.weight)
    result = experiment_run(spec, g, out=args.out, tail_eps=args.tail_eps)
    last = result.rows[-1].report
    print("wrote %s: %d rows, final degree %d, final diag ratio %s"
          % (args.out, len(result.rows), last.degree, last.diagonal_ratio))
    if result.small_diagonal_suspect:
        print("note: sequence fails the small-diagonal hypothesis "
              "(diagonal ratio is not decaying)")
    return 0


# ---------------------------------------------------------------------------
# verify suites


def _suite_productformula(rng: random.Random) -> tuple[bool, list[str]]:
    lines = []
    for i in range(100):
        q = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 6))
        if q == 0:
            q = Fraction(1, 3)
        if not product_formula_check(q):
            lines.append("counterexample: rational %s" % q)
            return False, lines
    checked = 0
    while checked < 20:
        d = rng.randint(2, 8)
        coeffs = [rng.randint(-30, 30) for _ in range(d)] + [rng.randint(1, 30)]
        try:
            Z = divisor_from_poly(coeffs)
        except DomainError:
            continue
        ds = d_star(Z)
        if not product_formula_check(ds):
            lines.append("counterexample: coeffs %s, dstar %s" % (coeffs, ds))
            return False, lines
        checked += 1
    lines.append("product formula exact on 100 rationals and 20 divisor products")
    return True, lines


def _suite_identity(rng: random.Random) -> tuple[bool, list[str]]:
    lines = []
    weights = [(trivial_weight(), 1e-9), (std_weight(), 1e-9), (ex5_weight(), 5e-3)]
    for i in range(8):
        d = rng.randint(2, 8)
        coeffs = [rng.randint(-20, 20) for _ in range(d)] + [rng.randint(1, 20)]
        inf_mult = rng.choice([0, 0, 1, 2])
        try:
            Z = divisor_from_poly(coeffs, inf_mult)
        except DomainError:
            continue
        for g, tail in weights:
            report = global_fekete(Z, g, tail_eps=tail)
            if not report.identity_residual <= report.identity_slack:
                lines.append(
                    "counterexample: coeffs %s inf %d weight %s residual %.3e slack %.3e"
                    % (coeffs, inf_mult, g.name, report.identity_residual,
                       report.identity_slack))
                return False, lines
            if not report.dstar_product_formula:
                lines.append("counterexample: coeffs %s product formula" % coeffs)
                return False, lines
    lines.append("global identity within float slack on random divisors x 3 weights")
    return True, lines


def _suite_ex5(rng: random.Random) -> tuple[bool, list[str]]:
    import sympy

    import mpmath
    import sympy

    lines = []
    g = ex5_weight()
    primes = list(sympy.primerange(2, 101))
    # (i) grid bound on the radial profile, in natural log units
    for p in primes:
        comp = g.finite(p)
        m = int(1 / (2 * comp.sup_coeff))
        with mpmath.workdps(40):
            if not mpmath.mpf(m) >= mpmath.mpf(p) ** 2 * mpmath.ln(p):
                lines.append("counterexample: branch count %d at p=%d" % (m, p))
                return False, lines
        for k in range(200):
            s = Fraction(k - 100, 25)
            c = comp.coeff_fn(s)
            if abs(c) > comp.sup_coeff:
                lines.append("counterexample: grid p=%d s=%s coeff %s" % (p, s, c))
                return False, lines
        r = radii(g, Place(p))
        if r.log_outer.coeff + r.log_inner.coeff != 0:
            lines.append("counterexample: radii p=%d" % p)
            return False, lines
    # (ii) kernel equals the chordal log distance of scaled points, where
    # the scale has exact valuation -1/m at p
    for i in range(100):
        p = rng.choice([2, 3, 5, 7])
        comp = g.finite(p)
        shift = -comp.measure_point.rad_exp
        z = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        w = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        if z == w:
            continue

        def logplus(x):
            if x == 0:
                return Fraction(0)
            return max(Fraction(0), shift - val_p(x, p))

        want = (shift - val_p(z - w, p)) - logplus(z) - logplus(w)
        got = potential_kernel(g, Place(p), BerkPoint.type_i(p, z),
                               BerkPoint.type_i(p, w))
        if got.coeff != want:
            lines.append("counterexample: kernel p=%d z=%s w=%s got %s want %s"
                         % (p, z, w, got.coeff, want))
            return False, lines
    # (iii) self-pairing of the unit-mass disk vanishes
    for p in primes[:10]:
        x = g.finite(p).measure_point
        got = potential_kernel(g, Place(p), x, x)
        if got.coeff != 0:
            lines.append("counterexample: self pair p=%d coeff %s" % (p, got.coeff))
            return False, lines
    lines.append("branching family: grid bound, kernel match, zero self-energy, "
                 "reciprocal radii all hold")
    return True, lines


def random_certifier_instance(rng: random.Random):
    """A (rows, tails, tail_bound, eps) tuple satisfying every hypothesis."""
    m_cols = rng.randint(1, 6)
    n_rows = rng.randint(1, 5)
    eps = rng.uniform(0.05, 2.0)
    col_limit = eps / (4.0 * m_cols)
    q = 0.9 * min(col_limit, eps / (8.0 * m_cols))
    rows = [[rng.uniform(-q, q) for _ in range(m_cols)] for _ in range(n_rows)]
    tail_bound = 0.1 * eps / 4.0
    tails = [q for _ in range(m_cols)]
    return rows, tails, tail_bound, eps


def random_adversarial_instance(rng: random.Random):
    """A broken instance plus the reason the certifier must give."""
    rows, tails, tail_bound, eps = random_certifier_instance(rng)
    m_cols = len(tails)
    kind = rng.randint(0, 2)
    if kind == 2 and m_cols == 1:
        kind = rng.choice([0, 1])
    if kind == 0:
        return rows, tails, eps / 4.0 * rng.uniform(1.0, 3.0), eps, "tail_bound"
    col_limit = eps / (4.0 * m_cols)
    row = rng.randrange(len(rows))
    if kind == 1:
        rows[row] = [0.93 * col_limit] * m_cols
        tails = [0.95 * col_limit] * m_cols
        return rows, tails, tail_bound, eps, "row_sum"
    bad = 1.5 * col_limit
    rows[row] = [0.0] * m_cols
    rows[row][0] = bad
    rows[row][1] = -bad * 0.999
    tails = [1.01 * bad] * m_cols
    return rows, tails, tail_bound, eps, "row_sup"


def _suite_lemma43(rng: random.Random) -> tuple[bool, list[str]]:
    lines = []
    for i in range(300):
        rows, tails, tail_bound, eps = random_certifier_instance(rng)
        out = lemma43_certify(rows, tails, tail_bound, eps)
        if not out.ok:
            lines.append("counterexample: valid instance %d refused: %s"
                         % (i, out.to_json()))
            return False, lines
        brute = max(abs(a) for row in rows for a in row)
        if not brute < out.sup_bound:
            lines.append("counterexample: certificate %d not confirmed, sup %g" % (i, brute))
            return False, lines
    for i in range(300):
        rows, tails, tail_bound, eps, reason = random_adversarial_instance(rng)
        out = lemma43_certify(rows, tails, tail_bound, eps)
        if out.ok or out.reason != reason:
            lines.append("counterexample: adversarial %d expected %s got %s"
                         % (i, reason, out.to_json()))
            return False, lines
    lines.append("certifier: 300 valid certified and confirmed, 300 broken refused")
    return True, lines


_SUITES = {
    "productformula": _suite_productformula,
    "identity": _suite_identity,
    "ex5": _suite_ex5,
    "lemma43": _suite_lemma43,
}


def _cmd_verify(args) -> int:
    rng = random.Random(20260821)
    ok, lines = _SUITES[args.suite](rng)
    for line in lines:
        print(line)
    print("%s: %s" % (args.suite, "PASS" if ok else "FAIL"))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="adelic",
        description="Exact adelic potential theory for divisors over Q",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_poly(p):
        p.add_argument("--poly", required=True,
                       help="comma separated integer coefficients, constant first")
        p.add_argument("--inf-mult", type=int, default=0,
                       help="multiplicity at infinity (default 0)")

    p = sub.add_parser("dstar", help="pairwise difference product, exact")
    add_poly(p)
    p.set_defaults(fn=_cmd_dstar)

    p = sub.add_parser("height", help="adelic height interval")
    add_poly(p)
    p.add_argument("--weight", default="std", choices=sorted(_WEIGHTS))
    p.add_argument("--tail-eps", type=float, default=1e-9)
    p.set_defaults(fn=_cmd_height)

    p = sub.add_parser("fekete", help="weighted pair sum at one or all places")
    add_poly(p)
    p.add_argument("--weight", default="std", choices=sorted(_WEIGHTS))
    p.add_argument("--place", default="all",
                   help="'inf', a prime, or 'all' (default all)")
    p.add_argument("--tail-eps", type=float, default=1e-9)
    p.set_defaults(fn=_cmd_fekete)

    p = sub.add_parser("equidist", help="tabulate a divisor sequence")
    p.add_argument("--family", required=True,
                   help="unit_roots, pow:<a>, or preimages:<c>")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--weight", default="std", choices=sorted(_WEIGHTS))
    p.add_argument("--tail-eps", type=float, default=1e-9)
    p.add_argument("--out", required=True, help="output path, .csv or .json")
    p.set_defaults(fn=_cmd_equidist)

    p = sub.add_parser("verify", help="run a named self-check suite")
    p.add_argument("--suite", required=True, choices=sorted(_SUITES))
    p.set_defaults(fn=_cmd_verify)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
