"""Closed form versus brute-force integration on random parameter draws."""
import argparse
import json
import time

from cascade_g2.verification import equivalence_report


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--points", type=int, default=50)
    parser.add_argument("--tau-max", type=float, default=10.0)
    parser.add_argument("--tolerance", type=float, default=1e-6)
    parser.add_argument("--worst", type=int, default=5, help="how many worst cases to list")
    args = parser.parse_args()
    start = time.perf_counter()
    report = equivalence_report(args.cases, args.seed, args.points, args.tau_max, args.tolerance)
    elapsed = time.perf_counter() - start
    print(f"{args.cases} cases in {elapsed:.2f} s, max relative error {report['max_rel_error']:.3e}, "
          f"{'passed' if report['passed'] else 'FAILED'} at {args.tolerance:g}")
    for row in sorted(report["cases"], key=lambda r: -r["max_rel_error"])[: args.worst]:
        print(json.dumps({k: row[k] for k in ("case", "max_rel_error", "params")}))


if __name__ == "__main__":
    main()
