"""Census of the bounded family: for every valid assembly, tally the
connected genus and, for connected tori, the piece-type class."""
import argparse
from collections import Counter

from meridional.assembler import surface_invariants, validate_assembly
from meridional.enumeration import classify_genus1, iter_family
from meridional.torus import ManifoldSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--manifolds", nargs="+", default=["S3", "S1xS2", "L(5,2)"])
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--max-pieces", type=int, default=4)
    ap.add_argument("--max-crossings", type=int, default=6)
    args = ap.parse_args()

    for name in args.manifolds:
        m = ManifoldSpec.parse(name)
        genera, classes, total, invalid = Counter(), Counter(), 0, 0
        for a in iter_family(m, args.max_r, args.max_pieces, args.max_crossings):
            if validate_assembly(a):
                invalid += 1
                continue
            total += 1
            rep = surface_invariants(a)
            if not rep.connected:
                genera["disconnected"] += 1
                continue
            genera[rep.components[0].genus] += 1
            if rep.components[0].genus == 1:
                classes[classify_genus1(a)] += 1
        print(f"{name}: {total} valid ({invalid} rejected)")
        print("  connected genus:", dict(sorted(genera.items(), key=lambda kv: (isinstance(kv[0], str), kv[0]))))
        print("  genus-1 classes:", dict(sorted(classes.items())))


if __name__ == "__main__":
    main()
