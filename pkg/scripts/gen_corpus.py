"""Regenerate the shipped case-file corpus under fixtures/corpus.

Every fixture is executed through the command-line dispatcher before it is
written, so a freshly generated corpus always passes `ialex corpus`.  The
verify fixture bundles seeded random point-singularity instances; the rest
are small hand-picked cases touching every case kind at least once.
"""

import argparse
import json
import random
import sys
from pathlib import Path

from ialex import cli, engine
from ialex.laurent import normalize

SEED = 60912
VERIFY_INSTANCES = 24

# irreducibles evaluating to +-1 at t = 1, safe at every positive degree
ALEX_POOL = ("t^2 - t + 1", "2*t - 1", "t^2 - t - 1", "t^2 + t - 1")


def pool_product(rng: random.Random, max_factors: int = 2) -> str:
    out = normalize("1")
    for _ in range(rng.randint(0, max_factors)):
        out = out * normalize(rng.choice(ALEX_POOL))
    return str(out)


def random_traditional_perversity(rng: random.Random, n: int) -> list:
    values = [0]
    for _ in range(3, n + 1):
        values.append(values[-1] + rng.randint(0, 1))
    return values


def random_point_instance(rng: random.Random) -> dict:
    n = rng.randint(4, 7)
    top = n - 3
    a = ["1"] + [pool_product(rng) for _ in range(top - 1)] + ["1"]
    b = ["t - 1"] + [pool_product(rng) for _ in range(top)]
    c = ["1"] + [pool_product(rng) for _ in range(top)]
    perversity = random_traditional_perversity(rng, n)
    data = engine.DiskKnotData(n, a, b, c)
    ia = engine.ia_point(data, engine.Perversity(perversity))
    return {"ia": [str(q) for q in ia], "n": n}


def verify_case(rng: random.Random) -> dict:
    instances = [random_point_instance(rng) for _ in range(VERIFY_INSTANCES)]
    return {"kind": "verify", "payload": {"instances": instances}}


def torus_simplices() -> list:
    def v(i, j):
        return (i % 3) * 3 + (j % 3)

    simplices = []
    for i in range(3):
        for j in range(3):
            simplices.append([v(i, j), v(i + 1, j), v(i + 1, j + 1)])
            simplices.append([v(i, j), v(i, j + 1), v(i + 1, j + 1)])
    return simplices


def build_cases(rng: random.Random) -> dict:
    circle = [[0, 1], [1, 2], [0, 2]]
    return {
        "factor_quadratic": {
            "kind": "factor", "payload": {"poly": "t^2 - 1"}},
        "factor_product": {
            "kind": "factor",
            "payload": {"poly": "2*t^3 - 3*t^2 + 3*t - 1"}},
        "snf_invariant_factors": {
            "kind": "snf",
            "payload": {"matrix": [["t - 1", "1"], ["0", "t + 1"]]}},
        "snf_presentation": {
            "kind": "snf",
            "payload": {"matrix": [["t - 1", "0", "0"],
                                   ["0", "t^2 - 1", "0"],
                                   ["0", "0", "0"]]}},
        "seq_check_triple": {
            "kind": "seq",
            "payload": {"op": "check",
                        "polys": ["t - 1", "t^2 - 1", "t + 1"]}},
        "seq_solve_junction": {
            "kind": "seq",
            "payload": {"op": "solve",
                        "polys": ["t^2 - 1", "t^2 + 3*t + 2", None],
                        "junctions": {"0": "t - 1"}}},
        "seq_split_primary": {
            "kind": "seq",
            "payload": {"op": "split",
                        "modules": [{"torsion": ["t - 1"]},
                                    {"torsion": ["t^2 - 1"]},
                                    {"torsion": ["t + 1"]}],
                        "maps": [[["t + 1"]], [["1"]]],
                        "prime": "t - 1"}},
        "ia_point_dim5": {
            "kind": "ia-point",
            "payload": {"n": 5,
                        "a": ["1", "t - 2", "1"],
                        "b": ["t - 1", "t + 1", "1"],
                        "c": ["1", "t^2 - t + 1", "1"],
                        "perversity": [0, 1, 2, 3]}},
        "ia_point_dim7": {
            "kind": "ia-point",
            "payload": {"n": 7,
                        "a": ["1", "t^2 - t + 1", "2*t - 1", "1", "1"],
                        "b": ["t - 1", "t^2 + t - 1", "1",
                              "t^2 - t - 1", "2*t - 1"],
                        "c": ["1", "1", "t^2 - t + 1", "1", "2*t - 1"],
                        "perversity": [0, 0, 1, 1, 2, 2]}},
        "ia_product_dim6": {
            "kind": "ia-product",
            "payload": {"n": 6, "k": 5,
                        "perversity": [0, 0, 1, 1, 2],
                        "sigma": [{"free": 1}],
                        "links": [{"torsion": ["t - 1"]},
                                  {"torsion": ["t^2 - t + 1"]},
                                  {"torsion": ["2*t - 1"]}],
                        "c": ["1", "t^2 - t + 1", "1", "1", "1"],
                        "a_high": ["1"]}},
        "ia_dual_low": {
            "kind": "ia-dual",
            "payload": {"ia": ["t - 1", "2*t - 1"], "n": 3}},
        "verify_seeded": verify_case(rng),
        "bounds_allowed_single": {
            "kind": "bounds",
            "payload": {"op": "allowed", "i": 2, "n": 7, "k": 4,
                        "c": "t - 2",
                        "xi": ["t - 1", "t^2 - t + 1"]}},
        "bounds_allowed_general": {
            "kind": "bounds",
            "payload": {"op": "allowed", "j": 2, "lambda": "1",
                        "stratification": {
                            "n": 7,
                            "strata": [{"dim": 3, "components": [
                                {"xi": ["t - 1", "t + 1", "t^2 + 1"]}]}]}}},
        "bounds_exclude": {
            "kind": "bounds",
            "payload": {"op": "exclude", "gamma": "t^2 + 1",
                        "i": 2, "k": 4, "perversity": [0, 0, 0, 0, 0],
                        "lambda": "t - 2",
                        "xi": ["t - 1", "t^2 - t + 1"]}},
        "bounds_maxpower": {
            "kind": "bounds",
            "payload": {"op": "maxpower", "gamma": "t - 1", "j": 2,
                        "gamma_j": 3, "n": 6,
                        "perversity": [0, 0, 0, 0, 0],
                        "table": {"entries": [
                            {"i": 0, "p": 2, "q": 0, "poly": "t - 1"}]}}},
        "bounds_check": {
            "kind": "bounds",
            "payload": {"op": "check", "ia": "t^2 - 1",
                        "allowed": ["t - 1", "t + 1"],
                        "powers": {"t - 1": 1, "t + 1": 1}}},
        "homology_circle_loop": {
            "kind": "homology",
            "payload": {"simplices": circle, "monodromy": {"0-1": "t"}}},
        "homology_torus_torsion": {
            "kind": "homology",
            "payload": {"simplices": torus_simplices(),
                        "stalk": {"torsion": ["t - 1"]}}},
        "e2_cone_point_base": {
            "kind": "e2",
            "payload": {"base": {"simplices": [[0]]},
                        "links": [{"torsion": ["t - 1"]},
                                  {"torsion": ["t + 1", "t + 1"]}],
                        "cone": {"codim": 3, "perversity": [0, 1]}}},
        "e2_family_per_degree": {
            "kind": "e2",
            "payload": {"base": [
                {"simplices": circle, "monodromy": {"0-1": "t"}},
                {"simplices": circle}],
                "links": [{"torsion": ["t^2 - t + 1"]},
                          {"torsion": ["t - 1"]}]}},
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path,
                        default=Path(__file__).resolve().parent.parent
                        / "fixtures" / "corpus",
                        help="directory the case files are written to")
    parser.add_argument("--seed", type=int, default=SEED,
                        help="seed for the generated verify instances")
    args = parser.parse_args(argv)

    cases = build_cases(random.Random(args.seed))
    opts = cli.RunOptions()
    failures = []
    for name, case in sorted(cases.items()):
        report, code = cli.run_case(case, opts)
        if code != 0:
            failures.append((name, report))
    if failures:
        for name, report in failures:
            print(f"{name}: {json.dumps(report, sort_keys=True)}",
                  file=sys.stderr)
        print(f"{len(failures)} case(s) do not pass; nothing written",
              file=sys.stderr)
        return 1

    args.out.mkdir(parents=True, exist_ok=True)
    for name, case in sorted(cases.items()):
        path = args.out / f"{name}.json"
        path.write_text(json.dumps(case, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
